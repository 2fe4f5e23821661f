//! On-disk cache of length spectra, keyed by group and `N_max`.
//!
//! A cache file stores the generator matrices it was computed from, so a
//! stale or foreign file is recomputed rather than trusted. Norms and
//! lengths are not stored: they are recomputed from the exact trace, which
//! makes a warm read bit-identical to a cold computation.

use std::fs;
use std::path::{Path, PathBuf};

use orbifold_core::moebius::norm_from_trace;
use orbifold_core::spectra::{length_spectrum, SpectrumEntry};
use orbifold_core::{LengthSpectrum, PresentedGroup};
use serde::{Deserialize, Serialize};

use crate::CliError;

const VERSION: u32 = 1;

#[derive(Serialize, Deserialize, PartialEq)]
struct Row {
    trace: i128,
    multiplicity: usize,
    chi: Option<i8>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumFile {
    version: u32,
    group: String,
    generators: Vec<[i128; 4]>,
    /// `N_max` as IEEE bits.
    n_max_bits: u64,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn generator_entries(g: &PresentedGroup) -> Vec<[i128; 4]> {
    g.generators.iter().map(|x| x.matrix.entries()).collect()
}

fn rebuild(group_id: &str, n_max: f64, rows: &[Row]) -> Result<LengthSpectrum, CliError> {
    let mut entries = Vec::with_capacity(rows.len());
    for r in rows {
        let (norm, length) = norm_from_trace(r.trace as f64)?;
        entries.push(SpectrumEntry {
            trace: r.trace,
            norm,
            length,
            multiplicity: r.multiplicity,
            chi: r.chi,
        });
    }
    Ok(LengthSpectrum {
        group_id: group_id.into(),
        n_max,
        entries,
    })
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, g: &PresentedGroup, n_max: f64) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        Some(dir.join(format!("spectrum-v{VERSION}-{}-{:016x}.json", g.id, n_max.to_bits())))
    }

    fn read(&self, path: &Path, g: &PresentedGroup, n_max: f64) -> Option<Vec<Row>> {
        let text = fs::read_to_string(path).ok()?;
        let file: SpectrumFile = serde_json::from_str(&text).ok()?;
        let fresh = file.version == VERSION
            && file.group == g.id
            && file.generators == generator_entries(g)
            && file.n_max_bits == n_max.to_bits();
        fresh.then_some(file.rows)
    }

    fn write(&self, path: &Path, g: &PresentedGroup, n_max: f64, rows: Vec<Row>) -> Result<(), CliError> {
        let dir = path.parent().expect("cache path has a directory");
        fs::create_dir_all(dir)?;
        let file = SpectrumFile {
            version: VERSION,
            group: g.id.clone(),
            generators: generator_entries(g),
            n_max_bits: n_max.to_bits(),
            rows,
        };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Primitive length spectrum of `g` up to `n_max`, from the cache when a
    /// matching file exists.
    pub fn spectrum(&self, g: &PresentedGroup, n_max: f64) -> Result<LengthSpectrum, CliError> {
        let path = self.path(g, n_max);
        if let Some(rows) = path.as_ref().and_then(|p| self.read(p, g, n_max)) {
            return rebuild(&g.id, n_max, &rows);
        }
        let spec = length_spectrum(g, n_max)?;
        let rows: Vec<Row> = spec
            .entries
            .iter()
            .map(|e| Row {
                trace: e.trace,
                multiplicity: e.multiplicity,
                chi: e.chi,
            })
            .collect();
        let out = rebuild(&g.id, n_max, &rows)?;
        if let Some(p) = path {
            self.write(&p, g, n_max, rows)?;
        }
        Ok(out)
    }
}
