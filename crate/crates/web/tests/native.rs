use relu_forge_web::{analytic_profile_impl, multiply_error_map_impl, square_profile_impl};

#[test]
fn square_profile_hits_bound() {
    // 1025 samples include every odd multiple of 1/8, where the error peaks.
    let p = square_profile_impl(3, 1025).unwrap();
    assert_eq!(p.xs().len(), 1025);
    assert_eq!(p.measured(), 1.0 / 64.0);
    assert_eq!(p.bound(), 1.0 / 64.0);
    assert!(p.summary().contains("depth 3"));
    assert!(square_profile_impl(0, 10).is_err());
}

#[test]
fn multiply_map_within_bound() {
    let m = multiply_error_map_impl(3, 65).unwrap();
    assert_eq!(m.errors().len(), 65 * 65);
    assert!(m.measured() <= m.bound());
    assert!(m.measured() >= 1.0 / 64.0);
}

#[test]
fn analytic_profiles() {
    for preset in ["exp", "sin", "rational"] {
        let p = analytic_profile_impl(preset, 1e-3, 0.25, 301).unwrap();
        assert!(p.measured() <= p.bound(), "{preset}");
        assert_eq!(p.xs()[0], -0.75);
    }
    assert!(analytic_profile_impl("expsum:2", 1e-3, 0.25, 10).is_err());
    assert!(analytic_profile_impl("exp", 1.5, 0.25, 10).is_err());
    assert!(analytic_profile_impl("tan", 1e-3, 0.25, 10).is_err());
}
