//! Literal values and closed-loop properties checked through the public API.

use mnesor::control::{combine, MnesorControllerConfig};
use mnesor::convert::{mnesor_to_real, real_to_mnesor};
use mnesor::{
    evaluate, parse_flat, parse_mnesor, run, Controller, FlatNumber, Mnesor, PdGains, SignMode,
    SimConfig, Status,
};

fn flat(g: i64) -> FlatNumber {
    FlatNumber::new(g).unwrap()
}

fn m(text: &str) -> Mnesor {
    parse_mnesor(text).unwrap()
}

#[test]
fn flat_number_literals() {
    assert_eq!(flat(1).fadd(flat(2)), flat(1));
    assert_eq!(flat(2).fmul(flat(-3)).unwrap(), flat(-1));
    assert_eq!(parse_flat("(+2)").unwrap(), flat(2));
    assert!(flat(2).fleq(flat(1)));
    assert!(!flat(1).fleq(flat(2)));
}

#[test]
fn mnesor_literals() {
    assert_eq!(Mnesor::PST.mmul(Mnesor::NGT), Mnesor::Zero);
    assert_eq!(Mnesor::PST.madd(Mnesor::NGT), Mnesor::All);
    assert_eq!(m("PST(+3)").madd(Mnesor::NGT), Mnesor::NGT);
    assert_eq!(Mnesor::PST.conj(), Mnesor::NGT);
    assert_eq!(Mnesor::Zero.conj(), Mnesor::All);
}

#[test]
fn expression_literals() {
    for (text, want) in [
        ("PST + ~PST", "ALL"),
        ("PST.(+2) * PST.(+5)", "PST(+5)"),
        ("ZERO.(+3)", "ZERO"),
        ("PST * NGT", "ZERO"),
        ("PST + NGT", "ALL"),
        ("PST(+3) + NGT", "NGT"),
        ("~(NGT.(-2))", "PST(+2)"),
    ] {
        assert_eq!(evaluate(text).unwrap().to_string(), want, "{text}");
    }
}

fn default_scenario(controller: Controller) -> SimConfig {
    SimConfig::new(controller)
}

#[test]
fn pd_keeps_within_bounds_but_settles_slowly() {
    let tr = run(&default_scenario(Controller::Pd(PdGains::default()))).unwrap();
    assert_eq!(tr.status, Status::Completed);
    assert!(tr.samples.iter().all(|s| s.u.abs() <= 30.0));
    // Slow closed-loop pole: θ has decayed by only ~14% after 10 s.
    let last = tr.samples.last().unwrap();
    assert!(last.theta > 0.15 && last.theta < 0.2, "{}", last.theta);
}

#[test]
fn paper_sign_falls_over() {
    let gains = PdGains {
        sign_mode: SignMode::PaperLiteral,
        ..Default::default()
    };
    let tr = run(&default_scenario(Controller::Pd(gains))).unwrap();
    assert_eq!(tr.status, Status::FellOver);
}

#[test]
fn mnesor_trace_audits_itself() {
    let cfg = MnesorControllerConfig::default();
    let tr = run(&default_scenario(Controller::Mnesor(cfg))).unwrap();
    assert_eq!(tr.status, Status::Completed);
    let levels = cfg.actuator.levels();
    for s in &tr.samples {
        let int = s.mnesor.unwrap();
        assert!(s.theta.abs() < 0.4);
        assert!(levels.contains(&s.u));
        assert_eq!(
            int.xi,
            real_to_mnesor(s.theta, &cfg.theta_quantizer).unwrap()
        );
        assert_eq!(
            int.omega,
            real_to_mnesor(s.omega, &cfg.omega_quantizer).unwrap()
        );
        assert_eq!(int.u, combine(int.xi, int.omega, true));
        assert_eq!(s.u, mnesor_to_real(int.u, &cfg.actuator));
        let outside = s.theta.abs() > cfg.theta_quantizer.deadband
            && s.omega.abs() > cfg.omega_quantizer.deadband;
        if outside && s.theta.signum() != s.omega.signum() {
            assert_eq!(s.u, 0.0, "{s:?}");
        }
    }
}

#[test]
fn gate_flag_changes_the_trace() {
    let on = MnesorControllerConfig::default();
    let off = MnesorControllerConfig {
        cross_sign_zero: false,
        ..on
    };
    let a = run(&default_scenario(Controller::Mnesor(on))).unwrap();
    let b = run(&default_scenario(Controller::Mnesor(off))).unwrap();
    assert_ne!(a.samples, b.samples);
    assert_eq!(b.status, Status::Completed);
    for s in &b.samples {
        let int = s.mnesor.unwrap();
        if let (Some(p), Some(q)) = (int.xi.polarity(), int.omega.polarity()) {
            if p != q {
                assert_eq!(s.u == 0.0, int.xi.grade() == int.omega.grade(), "{s:?}");
            }
        }
    }
}
