//! One function per subcommand. Each returns a [`Report`] whose JSON has
//! the fields `command`, `inputs`, the results and `passed`, in that order.

use num_complex::Complex64;
use orbifold_core::groups::{builtin_orbifold_0_1_222, builtin_punctured_torus, Character};
use orbifold_core::index::{chern_coefficients, dim_omega_k, rootsum_identity, teichmuller_dimension};
use orbifold_core::kernels::{fay_ratio, tm_family, Eisenstein, GreenFunction};
use orbifold_core::localode::{
    leading_exponent, mode_ode_crosscheck, mode_series_solve, ode_c2_estimate, LocalBeltramiData,
};
use orbifold_core::spectra::{factorization_from_spectra, selberg_zeta_truncated};
use orbifold_core::{Classification, Moebius, PresentedGroup, Signature, TruncatedSumResult};
use serde_json::{json, Map, Value};

use crate::args::{ChiArg, Command, SigArg};
use crate::cache::Cache;
use crate::groupfile::select_group;
use crate::output::{cplx, num, Report, Table};
use crate::CliError;

pub fn dispatch(cmd: &Command, cache: &Cache) -> Result<Report, CliError> {
    match cmd {
        Command::VerifyIdentities { mmax, tol } => verify_identities(*mmax, *tol),
        Command::Chern { sig, k } => chern(sig, *k),
        Command::Dims { sig, kmax } => dims(sig, *kmax),
        Command::Area { sig } => area(sig),
        Command::Spectrum { group, nmax } => spectrum(cache, group, *nmax),
        Command::Zeta {
            group,
            s,
            nmax,
            imax,
            chi,
        } => zeta(cache, group, *s, *nmax, *imax as usize, *chi),
        Command::Factorization { s, nmax, imax } => factorization(cache, *s, *nmax, *imax as usize),
        Command::Eisenstein { group, z, s, radius } => eisenstein(group, *z, *s, *radius as usize),
        Command::Green { group, z, zp, radius } => green(group, *z, *zp, *radius as usize),
        Command::Fay {
            group,
            zp,
            ylist,
            radius,
            tol,
        } => fay(group, *zp, ylist, *radius as usize, *tol),
        Command::LimitTm { mlist, mmax } => limit_tm(mlist, *mmax),
        Command::OdeCheck { m, n, j, c0 } => ode_check(*m, *n, *j as usize, *c0),
    }
}

fn report(command: &str, inputs: Value, results: Value, table: Table, passed: bool) -> Report {
    let mut obj = Map::new();
    obj.insert("command".into(), json!(command));
    obj.insert("inputs".into(), inputs);
    if let Value::Object(r) = results {
        obj.extend(r);
    }
    obj.insert("passed".into(), json!(passed));
    Report {
        json: Value::Object(obj),
        table,
        passed,
    }
}

fn signature(sig: &SigArg) -> Result<Signature, CliError> {
    Ok(Signature::new(sig.genus, sig.cusps, sig.orders.clone())?)
}

fn sig_text(sig: &Signature) -> String {
    let mut parts = vec![sig.genus().to_string(), sig.cusps().to_string()];
    parts.extend(sig.orders().iter().map(|m| m.to_string()));
    parts.join(",")
}

fn truncated_json(r: &TruncatedSumResult) -> Value {
    json!({
        "value": r.value,
        "log_value": r.log_value,
        "nmax": r.n_max,
        "imax": r.i_max,
        "radius": r.radius,
        "tail": r.tail,
        "terms": r.terms,
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn verify_identities(mmax: u32, tol: f64) -> Result<Report, CliError> {
    let mut table = Table::new(&["m", "k", "direct_re", "direct_im", "closed", "max_error", "pass"]);
    let mut rows = Vec::new();
    let (mut failed, mut worst) = (0usize, 0.0f64);
    for m in 2..=mmax {
        for k in 0..2 * m as i64 {
            let r = rootsum_identity(m, k)?;
            let err = r.max_error();
            let pass = err < tol;
            failed += usize::from(!pass);
            worst = worst.max(err);
            table.push(vec![
                m.to_string(),
                k.to_string(),
                num(r.direct.re),
                num(r.direct.im),
                r.closed.to_string(),
                num(err),
                pass.to_string(),
            ]);
            rows.push(json!({
                "m": m,
                "k": k,
                "direct": cplx(r.direct),
                "closed": r.closed.to_string(),
                "bernoulli_form": r.bernoulli_form.to_string(),
                "first_identity": [cplx(r.first_identity.0), r.first_identity.1.to_string()],
                "second_identity": [cplx(r.second_identity.0), r.second_identity.1.to_string()],
                "max_error": err,
                "pass": pass,
            }));
        }
    }
    let results = json!({ "checked": rows.len(), "failed": failed, "max_error": worst, "rows": rows });
    Ok(report(
        "verify-identities",
        json!({ "mmax": mmax, "tol": tol }),
        results,
        table,
        failed == 0,
    ))
}

fn chern(sig: &SigArg, k: i64) -> Result<Report, CliError> {
    let sig = signature(sig)?;
    let c = chern_coefficients(&sig, k);
    let mut table = Table::new(&["term", "exact", "value"]);
    table.push(vec!["wp".into(), format!("{}/pi^2", c.wp_exact), num(c.wp)]);
    table.push(vec!["cusp".into(), c.cusp_exact.to_string(), num(c.cusp)]);
    for (i, (e, q)) in c.ell.iter().zip(&c.ell_exact).enumerate() {
        table.push(vec![format!("ell{}", i + 1), format!("{q}/pi"), num(*e)]);
    }
    let results = json!({
        "wp": c.wp,
        "wp_times_pi2": c.wp_exact.to_string(),
        "cusp": c.cusp,
        "cusp_exact": c.cusp_exact.to_string(),
        "ell": c.ell,
        "ell_times_pi": c.ell_exact.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    });
    Ok(report(
        "chern",
        json!({ "sig": sig_text(&sig), "k": k }),
        results,
        table,
        true,
    ))
}

fn dims(sig: &SigArg, kmax: i64) -> Result<Report, CliError> {
    let sig = signature(sig)?;
    let mut table = Table::new(&["k", "dim"]);
    let mut values = Vec::new();
    for k in 0..=kmax {
        let d = dim_omega_k(&sig, k);
        table.push(vec![k.to_string(), d.to_string()]);
        values.push(d);
    }
    let teich = teichmuller_dimension(&sig);
    let matches = dim_omega_k(&sig, 2) == teich;
    let results = json!({ "dims": values, "teichmuller_dimension": teich, "quadratic_matches_moduli": matches });
    Ok(report(
        "dims",
        json!({ "sig": sig_text(&sig), "kmax": kmax }),
        results,
        table,
        matches,
    ))
}

fn area(sig: &SigArg) -> Result<Report, CliError> {
    let sig = signature(sig)?;
    let mut table = Table::new(&["area_over_pi", "area"]);
    table.push(vec![sig.area_over_pi().to_string(), num(sig.area())]);
    let results = json!({
        "euler_characteristic": sig.euler_characteristic().to_string(),
        "area_over_pi": sig.area_over_pi().to_string(),
        "area": sig.area(),
    });
    Ok(report("area", json!({ "sig": sig_text(&sig) }), results, table, true))
}

fn spectrum(cache: &Cache, group: &str, nmax: f64) -> Result<Report, CliError> {
    let g = select_group(group)?;
    let spec = cache.spectrum(&g, nmax)?;
    let mut table = Table::new(&["trace", "norm", "length", "multiplicity", "chi"]);
    let mut rows = Vec::new();
    for e in &spec.entries {
        table.push(vec![
            e.trace.to_string(),
            num(e.norm),
            num(e.length),
            e.multiplicity.to_string(),
            e.chi.map(|c| c.to_string()).unwrap_or_default(),
        ]);
        rows.push(json!({
            "trace": e.trace as i64,
            "norm": e.norm,
            "length": e.length,
            "multiplicity": e.multiplicity,
            "chi": e.chi,
        }));
    }
    let results = json!({ "group_id": g.id, "classes": spec.class_count(), "entries": rows });
    Ok(report(
        "spectrum",
        json!({ "group": group, "nmax": nmax }),
        results,
        table,
        true,
    ))
}

fn zeta(cache: &Cache, group: &str, s: f64, nmax: f64, imax: usize, chi: ChiArg) -> Result<Report, CliError> {
    let g = select_group(group)?;
    let spec = cache.spectrum(&g, nmax)?;
    let spec = match chi {
        ChiArg::Trivial => spec.with_trivial_character(),
        ChiArg::Sign => {
            if g.character != Some(Character::LetterParity) {
                return Err(CliError::Usage(format!("group {} carries no sign character", g.id)));
            }
            spec
        }
    };
    let z = selberg_zeta_truncated(&spec, s, imax)?;
    let mut table = Table::new(&["value", "log_value", "nmax", "imax", "tail", "terms"]);
    table.push(vec![
        num(z.value),
        opt(z.log_value),
        num(nmax),
        imax.to_string(),
        num(z.tail),
        z.terms.to_string(),
    ]);
    let chi_name = match chi {
        ChiArg::Trivial => "trivial",
        ChiArg::Sign => "sign",
    };
    let inputs = json!({ "group": group, "s": s, "nmax": nmax, "imax": imax, "chi": chi_name });
    Ok(report("zeta", inputs, truncated_json(&z), table, true))
}

fn factorization(cache: &Cache, s: f64, nmax: f64, imax: usize) -> Result<Report, CliError> {
    let parent = builtin_orbifold_0_1_222()?;
    let sub = builtin_punctured_torus()?;
    let sub_spec = cache.spectrum(&sub, nmax)?.with_trivial_character();
    let parent_spec = cache.spectrum(&parent, nmax)?;
    let r = factorization_from_spectra(&sub_spec, &parent_spec, s, imax)?;
    let within_tail = r.discrepancy < r.tail;
    let control_fails = r.control_discrepancy > 10.0 * r.tail;
    let mut table = Table::new(&[
        "lhs",
        "rhs",
        "discrepancy",
        "tail",
        "control_discrepancy",
        "within_tail",
    ]);
    table.push(vec![
        num(r.lhs.value),
        num(r.rhs),
        num(r.discrepancy),
        num(r.tail),
        num(r.control_discrepancy),
        within_tail.to_string(),
    ]);
    let results = json!({
        "subgroup": sub.id,
        "group": parent.id,
        "lhs": truncated_json(&r.lhs),
        "rhs_trivial": truncated_json(&r.rhs_trivial),
        "rhs_sign": truncated_json(&r.rhs_sign),
        "rhs": r.rhs,
        "discrepancy": r.discrepancy,
        "tail": r.tail,
        "control_discrepancy": r.control_discrepancy,
        "within_tail": within_tail,
        "control_exceeds_ten_tails": control_fails,
    });
    let inputs = json!({ "s": s, "nmax": nmax, "imax": imax });
    Ok(report(
        "factorization",
        inputs,
        results,
        table,
        within_tail && control_fails,
    ))
}

fn kernel_table(r: &TruncatedSumResult) -> Table {
    let mut t = Table::new(&["value", "tail", "terms", "radius"]);
    t.push(vec![
        num(r.value),
        num(r.tail),
        r.terms.to_string(),
        r.radius.map(|x| x.to_string()).unwrap_or_default(),
    ]);
    t
}

fn cusp_group(selector: &str) -> Result<PresentedGroup, CliError> {
    let g = select_group(selector)?;
    if g.cusp.is_none() {
        return Err(CliError::Usage(format!("group {} has no cusp", g.id)));
    }
    Ok(g)
}

fn eisenstein(group: &str, z: Complex64, s: f64, radius: usize) -> Result<Report, CliError> {
    let g = cusp_group(group)?;
    let r = Eisenstein::new(&g, radius)?.eval(z, s)?;
    let inputs = json!({ "group": group, "z": cplx(z), "s": s, "L": radius });
    Ok(report("eisenstein", inputs, truncated_json(&r), kernel_table(&r), true))
}

fn green(group: &str, z: Complex64, zp: Complex64, radius: usize) -> Result<Report, CliError> {
    let g = cusp_group(group)?;
    let r = GreenFunction::new(&g, radius)?.eval(z, zp)?;
    let inputs = json!({ "group": group, "z": cplx(z), "zp": cplx(zp), "L": radius });
    Ok(report("green", inputs, truncated_json(&r), kernel_table(&r), true))
}

fn fay(group: &str, zp: Complex64, ylist: &[f64], radius: usize, tol: f64) -> Result<Report, CliError> {
    if ylist.is_empty() {
        return Err(CliError::Usage("--ylist is empty".into()));
    }
    let g = cusp_group(group)?;
    let green = GreenFunction::new(&g, radius)?;
    let eis = Eisenstein::from_unfolding(green.unfolding.clone());
    let mut table = Table::new(&["y", "green", "eisenstein", "ratio", "deviation"]);
    let mut rows = Vec::new();
    let mut devs = Vec::new();
    for &y in ylist {
        let f = fay_ratio(&green, &eis, zp, y)?;
        table.push(vec![
            num(y),
            num(f.green.value),
            num(f.eisenstein.value),
            num(f.ratio),
            num(f.deviation()),
        ]);
        rows.push(json!({
            "y": y,
            "green": truncated_json(&f.green),
            "eisenstein": truncated_json(&f.eisenstein),
            "ratio": f.ratio,
            "deviation": f.deviation(),
        }));
        devs.push(f.deviation());
    }
    let monotone = devs.windows(2).all(|w| w[1] < w[0]);
    let last = *devs.last().expect("nonempty");
    let results =
        json!({ "rows": rows, "monotone": monotone, "final_deviation": last, "final_within_tol": last < tol });
    let inputs = json!({ "group": group, "zp": cplx(zp), "ylist": ylist, "L": radius, "tol": tol });
    Ok(report("fay", inputs, results, table, monotone && last < tol))
}

fn max_entry_diff(x: &Moebius, y: [f64; 4]) -> f64 {
    let e = x.entries();
    let plus = e.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let minus = e.iter().zip(&y).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
    plus.min(minus)
}

fn limit_tm(mlist: &[u32], mmax: u32) -> Result<Report, CliError> {
    let ms: Vec<u32> = if mlist.is_empty() {
        (2..=mmax).collect()
    } else {
        mlist.to_vec()
    };
    let mut table = Table::new(&[
        "m",
        "power_residual",
        "fixpoint_re",
        "fixpoint_im",
        "fixpoint_error",
        "image_residual",
        "limit_error",
        "pass",
    ]);
    let mut rows = Vec::new();
    let mut all = true;
    for m in ms {
        let t = tm_family(m)?;
        let power = max_entry_diff(&t.pow(m as i64), [1.0, 0.0, 0.0, 1.0]);
        let expected = Complex64::new(0.0, m as f64 / (2.0 * std::f64::consts::PI));
        // T_2 = −I fixes every point, so only the image test applies there
        let fix = if t.classify() == Classification::Elliptic {
            let p = t.fixpoint_elliptic()?.to_upper();
            Some((p, (p - expected).norm()))
        } else {
            None
        };
        let image = (t.apply(expected) - expected).norm();
        let limit = max_entry_diff(&t, [1.0, 1.0, 0.0, 1.0]);
        let pass = power < 1e-10 && image < 1e-12 && fix.is_none_or(|(_, e)| e < 1e-12) && limit < 10.0 / m as f64;
        all &= pass;
        table.push(vec![
            m.to_string(),
            num(power),
            opt(fix.map(|(p, _)| p.re)),
            opt(fix.map(|(p, _)| p.im)),
            opt(fix.map(|(_, e)| e)),
            num(image),
            num(limit),
            pass.to_string(),
        ]);
        rows.push(json!({
            "m": m,
            "classification": format!("{:?}", t.classify()).to_lowercase(),
            "power_residual": power,
            "fixpoint": fix.map(|(p, _)| cplx(p)),
            "fixpoint_error": fix.map(|(_, e)| e),
            "image_residual": image,
            "limit_error": limit,
            "limit_bound": 10.0 / m as f64,
            "pass": pass,
        }));
    }
    let inputs = json!({ "mlist": mlist, "mmax": mmax });
    Ok(report("limit-tm", inputs, json!({ "rows": rows }), table, all))
}

/// Fixed local expansion coefficients `a_{jm}`, `b_{jm}`, `j = 1..=J`.
pub fn ode_check_data(m: u32, j: usize) -> Result<LocalBeltramiData, CliError> {
    let a = (1..=j)
        .map(|i| Complex64::from_polar(1.0 / i as f64, i as f64))
        .collect();
    let b = (1..=j)
        .map(|i| Complex64::from_polar(0.5 / i as f64, -0.7 * i as f64))
        .collect();
    Ok(LocalBeltramiData::new(m, a, b)?)
}

fn ode_check(m: u32, n: i64, j: usize, c0: f64) -> Result<Report, CliError> {
    const R_MAX: f64 = 0.85;
    let data = ode_check_data(m, j)?;
    let c_lead = Complex64::new(c0, 0.0);
    let sol = mode_series_solve(&data, n, c_lead, R_MAX)?;
    let crosscheck = mode_ode_crosscheck(&sol, 0.05, R_MAX)?;
    let mut results = Map::new();
    let mut pass = crosscheck < 1e-8;
    results.insert("crosscheck_deviation".into(), json!(crosscheck));
    if n == 0 {
        let origin = Complex64::new(0.0, 0.0);
        let expected = if m == 2 {
            2.0 * c_lead - 4.0 * data.mu(origin) * data.nu(origin).conj()
        } else {
            2.0 * c_lead
        };
        let ode = ode_c2_estimate(&data, c_lead)?;
        let series_err = (sol.c2() - expected).norm();
        let ode_err = (ode - expected).norm();
        pass &= series_err < 1e-12 && ode_err < 1e-8;
        results.insert("c0".into(), cplx(sol.c0()));
        results.insert("c2".into(), cplx(sol.c2()));
        results.insert("c2_expected".into(), cplx(expected));
        results.insert("c2_series_error".into(), json!(series_err));
        results.insert("c2_ode".into(), cplx(ode));
        results.insert("c2_ode_error".into(), json!(ode_err));
    } else {
        let p = leading_exponent(&sol, 1e-3)?;
        let err = (p - n.abs() as f64).abs();
        pass &= err < 1e-3;
        results.insert("leading".into(), cplx(sol.leading()));
        results.insert("leading_exponent".into(), json!(p));
        results.insert("leading_exponent_error".into(), json!(err));
    }
    let mut table = Table::new(&["r", "f_re", "f_im", "df_re", "df_im"]);
    let mut rows = Vec::new();
    for i in 1..=17 {
        let r = 0.05 * i as f64;
        let (f, df) = sol.eval_with_derivative(r)?;
        table.push(vec![num(r), num(f.re), num(f.im), num(df.re), num(df.im)]);
        rows.push(json!({ "r": r, "f": cplx(f), "df": cplx(df) }));
    }
    results.insert("table".into(), Value::Array(rows));
    let inputs = json!({
        "m": m,
        "n": n,
        "J": j,
        "c0": c0,
        "a": data.a.iter().map(|z| cplx(*z)).collect::<Vec<_>>(),
        "b": data.b.iter().map(|z| cplx(*z)).collect::<Vec<_>>(),
    });
    Ok(report("ode-check", inputs, Value::Object(results), table, pass))
}
