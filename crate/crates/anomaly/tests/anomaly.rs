use std::collections::HashMap;

use bcov_anomaly::*;
use bcov_fields::{field, FieldLabel};
use bcov_numeric::{int, rat};
use bcov_polyring::{OTElement, WeightedPoly};

fn opts() -> SolveOptions {
    SolveOptions::default()
}

#[test]
fn printed_f1_values() {
    let f1 = LogAmplitude::printed();
    assert_eq!(f1.apply(&field(FieldLabel::Rg11)).as_constant(), Some(rat(-1, 10)));
    assert_eq!(f1.apply(&field(FieldLabel::Rg0)).as_constant(), Some(rat(-59, 30)));
}

#[test]
fn normalized_f1_satisfies_genus_one_equations() {
    let checks = f1_checks(&LogAmplitude::normalized(), &chi_b(-200));
    assert_eq!(checks.len(), 6);
    for c in &checks {
        assert!(c.passed(), "{:?}: {} vs {}", c.label, c.value, c.claimed);
    }
    let rg0 = checks.iter().find(|c| c.label == FieldLabel::Rg0).unwrap();
    assert_eq!(rg0.claimed, rat(-59, 6));
    // The printed exponents fail the same checks.
    assert!(!f1_checks(&LogAmplitude::printed(), &chi_b(-200)).iter().all(F1Check::passed));
}

#[test]
fn r1_f1_regular() {
    assert!(r1_f1_is_regular(&LogAmplitude::normalized()));
    assert!(r1_f1_is_regular(&LogAmplitude::printed()));
}

#[test]
fn linear_form_arithmetic() {
    let p = ParamId { genus: 2, index: 0 };
    let mut f = LinearForm::constant(OTElement::var(0));
    f.params.insert(p, OTElement::one());
    let g = f.sub(&f);
    assert!(g.is_zero());
    assert!(matches!(f.mul(&f), Err(AnomalyError::NonlinearAmbiguity)));
    let sq = f.mul(&LinearForm::constant(OTElement::var(1))).unwrap();
    let vals: HashMap<_, _> = [(p, int(3))].into_iter().collect();
    let want = OTElement::var(0).add(&OTElement::constant(int(3))).mul(&OTElement::var(1));
    assert_eq!(sq.eval(&vals).unwrap(), want);
    assert!(matches!(f.eval(&HashMap::new()), Err(AnomalyError::MissingParameter(_))));
}

#[test]
fn predicted_kernel_monomials() {
    let k2: Vec<String> = predicted_kernel(2).iter().map(|m| m.to_string()).collect();
    assert_eq!(k2.len(), 3);
    assert_eq!(predicted_kernel(3).len(), 5);
    for m in predicted_kernel(2) {
        assert_eq!((m.e0(), m.e1()), (21, 3));
    }
}

#[test]
fn genus2_solution() {
    let f1 = LogAmplitude::normalized();
    let amps = vec![Amplitude::Genus1(f1.clone())];
    let rhs = rhs_genus(2, &amps).unwrap();
    let sol = solve_genus(2, &rhs, &SolveOptions { cross_check: true, ..opts() }).unwrap();
    assert_eq!(sol.unknowns, 258);
    assert_eq!(sol.amplitude.ambiguity.len(), 3);
    assert!(sol.kernel_matches_prediction);
    assert!(sol.support_ok);
    assert!(sol.residual_zero);
    assert_eq!(sol.cross_check, Some(true));
    for r in constraint_residual(&sol.amplitude, &rhs) {
        assert!(r.is_zero());
    }
    // The particular solution is the canonical one: no weight on the kernel monomials.
    for (_, m) in &sol.amplitude.ambiguity {
        assert_eq!(sol.amplitude.q().coeff(m), int(0));
    }
}

#[test]
fn printed_f1_makes_genus2_inconsistent() {
    let amps = vec![Amplitude::Genus1(LogAmplitude::printed())];
    let rhs = rhs_genus(2, &amps).unwrap();
    assert!(matches!(solve_genus(2, &rhs, &opts()), Err(AnomalyError::Inconsistent { genus: 2, .. })));
}

#[test]
fn printed_denominator_base_is_inconsistent() {
    let amps = vec![Amplitude::Genus1(LogAmplitude::normalized())];
    let rhs = rhs_genus(2, &amps).unwrap();
    let r = solve_genus(2, &rhs, &SolveOptions { base: DenominatorBase::Printed, cross_check: false });
    assert!(r.is_err());
}

#[test]
fn master_equations_genus2() {
    let f1 = LogAmplitude::normalized();
    let chain = solve_chain(&f1, 2, &opts()).unwrap();
    let higher: Vec<_> = chain.iter().map(|s| s.amplitude.clone()).collect();
    let chib = chi_b(-200);
    let entries = verify_master(&f1, &higher, &chib).unwrap();
    assert_eq!(entries.len(), 12);
    for e in &entries {
        assert!(e.passed(), "g={} {:?}: {}", e.genus, e.equation, e.residual);
    }
    // Spot values from the derived relations.
    let f2 = higher[0].form();
    assert_eq!(f2.apply(&field(FieldLabel::Rt)).constant.as_constant(), Some(rat(350, 9)));
    let r1f1 = f1.apply(&field(FieldLabel::R1));
    let want = r1f1.scale(&(-&chib / int(24)));
    assert!(f2.apply(&field(FieldLabel::Rt1)).constant.sub(&want).is_zero());
}

#[test]
fn substitution_removes_parameters() {
    let f1 = LogAmplitude::normalized();
    let s = solve_chain(&f1, 2, &opts()).unwrap().remove(0);
    let vals: HashMap<_, _> = s.amplitude.params().into_iter().map(|p| (p, int(1))).collect();
    let sub = s.amplitude.substitute(&vals);
    assert!(sub.params().is_empty());
    assert!(sub.ambiguity.is_empty());
    let diff = sub.q().sub(s.amplitude.q());
    let expect = s.amplitude.ambiguity.iter().fold(WeightedPoly::zero(), |a, (_, m)| a.add(&WeightedPoly::term(int(1), *m)));
    assert_eq!(diff, expect);
}

#[test]
fn genus3_kernel() {
    let f1 = LogAmplitude::normalized();
    let chain = solve_chain(&f1, 3, &opts()).unwrap();
    let s3 = &chain[1];
    assert_eq!(s3.unknowns, 3434);
    assert_eq!(s3.amplitude.ambiguity.len(), 5);
    assert!(s3.kernel_matches_prediction && s3.support_ok && s3.residual_zero);
}

#[test]
fn master_equations_genus3_with_free_parameters() {
    let f1 = LogAmplitude::normalized();
    let chain = solve_chain(&f1, 3, &opts()).unwrap();
    let higher: Vec<_> = chain.iter().map(|s| s.amplitude.clone()).collect();
    assert_eq!(higher[1].params().len(), 3 + 5);
    let entries = verify_master(&f1, &higher, &chi_b(-200)).unwrap();
    let failed: Vec<_> = entries.iter().filter(|e| !e.passed()).map(|e| (e.genus, e.equation)).collect();
    assert!(failed.is_empty(), "{failed:?}");
}
