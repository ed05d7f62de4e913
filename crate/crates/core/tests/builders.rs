use relu_forge::builders::{
    build_analytic, build_monomial, build_multiply, build_polynomial, build_square, chain_width, PolySpec, Preset,
};
use relu_forge::calculus::skip_to_standard;
use relu_forge::net::Network;
use relu_forge::verifier::{convergence_sweep, sup_error, Strategy, SweepStrategy, SweepTarget};
use relu_forge::Hyperbox;

#[test]
fn structural_budgets() {
    for l in 1..=6 {
        let sq = build_square(l).unwrap().net;
        assert_eq!((sq.depth, sq.width), (l, 2));
        let m = build_multiply(l).unwrap().net;
        assert_eq!((m.depth, m.width), (3 * l, 2));
    }
    for p in 2..=3 {
        for d in 1..=3 {
            let idx: Vec<usize> = (0..p).map(|i| i % d).collect();
            let net = build_monomial(d, &idx, 2, false).unwrap().net;
            assert_eq!((net.depth, net.width), (3 * (p - 1) * 2, 3));
            assert_eq!(skip_to_standard(&net).unwrap().max_width(), d + 4);
        }
    }
}

#[test]
fn high_degree_monomials_need_one_more_slot() {
    let net = build_monomial(2, &[0, 1, 0, 1, 0], 2, false).unwrap().net;
    assert_eq!(net.width, chain_width(5));
    assert_eq!(net.width, 4);
    assert_eq!(skip_to_standard(&net).unwrap().max_width(), 2 + 5);
}

#[test]
fn square_error_quarters() {
    let rows = convergence_sweep(&SweepTarget::Square, &[2, 3, 4, 5, 6], None, SweepStrategy::Auto).unwrap();
    for (row, k) in rows.iter().zip([4, 6, 8, 10, 12]) {
        assert!((row.measured - 0.5f64.powi(k)).abs() <= 1e-10);
        assert!(row.ratio <= 1.0);
    }
    for w in rows.windows(2) {
        assert_eq!(w[1].measured / w[0].measured, 0.25);
    }
}

#[test]
fn multiply_and_monomial_rates() {
    let rows = convergence_sweep(&SweepTarget::Multiply, &[2, 3, 4, 5], None, SweepStrategy::Auto).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].measured / w[0].measured <= 0.3, "{} -> {}", w[0].measured, w[1].measured);
    }
    let target = SweepTarget::Monomial { input_dim: 2, indices: vec![0, 1, 1] };
    let rows = convergence_sweep(&target, &[2, 3, 4], None, SweepStrategy::Fixed(Strategy::Uniform(129))).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].measured / w[0].measured <= 0.3);
    }
    assert!(rows.iter().all(|r| r.ratio <= 1.0));
}

#[test]
fn multiply_on_zero_axis() {
    // At (0, t) only the square errors at t/2 and t survive: 2 e(t/2) - e(t)/2.
    let l = 3;
    let sq = build_square(l).unwrap().net;
    let m = build_multiply(l).unwrap().net;
    let e = |t: f64| sq.eval(&[t]).unwrap() - t * t;
    for i in 0..=512 {
        let t = -1.0 + i as f64 / 256.0;
        let got = m.eval(&[0.0, t]).unwrap();
        assert!((got - (2.0 * e(t / 2.0) - e(t) / 2.0)).abs() < 1e-14);
        assert!(got.abs() <= 3.0 / 64.0);
    }
}

#[test]
fn polynomial_square_term_matches_square() {
    let b = build_polynomial(&PolySpec::parse("2:1").unwrap(), 3, false).unwrap();
    let r = sup_error(&b.net, &|x| x[0] * x[0], &Hyperbox::symmetric(1), Strategy::DyadicMidpoints(3)).unwrap();
    assert_eq!(r.measured, 1.0 / 64.0);
}

#[test]
fn clamped_chain_stays_within_bound() {
    let idx = [0, 1, 0, 1];
    let b = build_monomial(2, &idx, 3, true).unwrap();
    let r = sup_error(&b.net, &|x| x[0] * x[0] * x[1] * x[1], &Hyperbox::symmetric(2), Strategy::Uniform(129)).unwrap();
    assert!(r.measured <= b.certificate.bound);
    assert_eq!(b.net.depth, 3 * 3 * 3 + 2);
}

#[test]
fn analytic_presets_meet_their_bounds() {
    for (preset, eps, delta, n) in [
        (Preset::Exp, 1e-3, 0.25, 4097),
        (Preset::Sin, 1e-3, 0.25, 4097),
        (Preset::Rational, 1e-3, 0.25, 4097),
        (Preset::ExpSum(2), 1e-2, 0.5, 129),
    ] {
        let series = preset.series_for(eps, delta).unwrap();
        let b = build_analytic(&series, eps, delta, false).unwrap();
        let d = preset.input_dim();
        let shrunk = Hyperbox::cube(d, -1.0 + delta, 1.0 - delta);
        let r = sup_error(&b.net, &|x| preset.eval(x), &shrunk, Strategy::Uniform(n)).unwrap();
        assert!(r.measured <= b.concrete_bound(), "{preset}: {} > {}", r.measured, b.concrete_bound());
        assert!(b.concrete_bound() <= 2.0 * eps * series.l1_norm, "{preset}");
        assert!(b.certificate.bound <= 2.0 * eps * series.l1_norm * (1.0 + 1e-12), "{preset}");
        assert!(!r.out_of_box);
    }
}

#[test]
fn analytic_standard_width() {
    let series = Preset::ExpSum(2).series_for(1e-2, 0.5).unwrap();
    let b = build_analytic(&series, 1e-2, 0.5, false).unwrap();
    let std = skip_to_standard(&b.net).unwrap();
    assert_eq!(std.max_width(), 2 + chain_width(b.degree) + 1);
}
