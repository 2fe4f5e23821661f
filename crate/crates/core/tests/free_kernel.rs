use orbifold_core::kernels::free_resolvent_s2;
use orbifold_core::ode::DormandPrince;
use std::f64::consts::PI;

fn q(d: f64) -> f64 {
    free_resolvent_s2(d).unwrap()
}

fn dq(d: f64) -> f64 {
    let h = 1e-5 * d;
    (q(d + h) - q(d - h)) / (2.0 * h)
}

/// Simpson's rule for ∫₀^r Q(ρ) sinh ρ dρ; the integrand vanishes at 0.
fn flux_integral(r: f64) -> f64 {
    let n = 2000;
    let h = r / n as f64;
    let f = |x: f64| if x == 0.0 { 0.0 } else { q(x) * x.sinh() };
    let mut s = f(0.0) + f(r);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

// ∫_{B_r} (Δ₀ + ½) Q dA = −(π/2) sinh r Q′(r) + π ∫₀^r Q sinh ρ dρ = 1
#[test]
fn normalisation_over_small_disks() {
    for r in [1e-3f64, 1e-2, 0.1, 0.5, 1.0] {
        let total = -0.5 * PI * r.sinh() * dq(r) + PI * flux_integral(r);
        assert!((total - 1.0).abs() < 1e-3, "r = {r}: {total}");
    }
}

// f″ + coth d f′ − 2f = 0, integrated inwards from d = 8 (the stable
// direction for the decaying solution) with values taken from Q
#[test]
fn satisfies_radial_equation() {
    let dp = DormandPrince::new(1e-12, 1e-20);
    let y0 = [q(8.0), dq(8.0)];
    for d1 in [4.0, 2.5, 1.5, 0.5, 0.1] {
        let y = dp
            .integrate(|d, y: &[f64; 2]| [y[1], 2.0 * y[0] - y[1] / d.tanh()], 8.0, y0, d1)
            .unwrap();
        assert!((y[0] / q(d1) - 1.0).abs() < 1e-7, "d = {d1}: {} vs {}", y[0], q(d1));
    }
}

#[test]
fn decays_like_exp_minus_two_d() {
    // Q₁(x) ~ 1/(3x²), so Q ~ (8/3π) e^{−2d}
    for d in [10.0, 20.0, 30.0] {
        let ratio = q(d) / (8.0 / (3.0 * PI) * (-2.0 * d).exp());
        assert!((ratio - 1.0).abs() < 1e-6, "{d}: {ratio}");
    }
}
