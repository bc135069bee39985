use otk::construct::{make_half, make_maximal, make_totally_real, HalfShift, MaximalFamilySpec};
use otk::lckrank::{betti1, classify, recheck, Case, RankCertificate};
use otk::realroots::signature;
use otk::{Error, IntPoly, NumberField};

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

#[test]
fn table_fields_classify() {
    let half = classify(&NumberField::new(ip(&[-2, 0, 0, 0, 1])).unwrap()).unwrap();
    assert_eq!((half.betti1, half.lck_rank, half.case), (2, Some(1), Case::Half));

    let max = classify(&NumberField::new(ip(&[-17, -5, 6, 0, 1])).unwrap()).unwrap();
    assert_eq!((max.betti1, max.lck_rank, max.case), (2, Some(2), Case::Maximal));
    assert!(matches!(max.certificate, RankCertificate::NoProperSubfield(_)));

    let odd = classify(&NumberField::new(ip(&[2, -4, 0, 0, 0, 1])).unwrap()).unwrap();
    assert_eq!(odd.certificate, RankCertificate::OddDegree);
    assert_eq!(odd.lck_rank, Some(3));
}

#[test]
fn every_certificate_rechecks() {
    for c in [&[-2, 0, 0, 0, 1][..], &[-17, -5, 6, 0, 1], &[2, -4, 0, 0, 0, 1], &[-5, 0, 0, 0, 1]] {
        let r = classify(&NumberField::new(ip(c)).unwrap()).unwrap();
        recheck(&r).unwrap();
    }
}

#[test]
fn wrong_signature_is_rejected() {
    let k = NumberField::new(ip(&[1, 0, 1])).unwrap();
    assert!(matches!(classify(&k), Err(Error::Signature { s: 0, t: 1, .. })));
    let k = NumberField::new(ip(&[-2, 0, 0, 0, 0, 0, 1])).unwrap();
    assert!(matches!(classify(&k), Err(Error::Signature { s: 2, t: 2, .. })));
}

#[test]
fn maximal_construction_round_trip() {
    let spec = MaximalFamilySpec {
        n: 2,
        f1: ip(&[1, 1, 0, 0, 1]),
        f2: ip(&[1, 1, 0, 0, 1]),
        f3: ip(&[-2, 0, 1, 0, 1]),
        g: IntPoly::zero(),
    };
    let m = make_maximal(&spec).unwrap();
    assert_eq!(m.poly, ip(&[-17, -5, 6, 0, 1]));
    let r = classify(&NumberField::new(m.poly).unwrap()).unwrap();
    assert_eq!(r.case, Case::Maximal);
}

#[test]
fn half_constructions_over_cyclotomic_subfields() {
    for n in 2..=4 {
        let e = make_totally_real(n).unwrap();
        assert_eq!(signature(&e.poly).unwrap().s, n);
        let h = make_half(&e.poly, HalfShift::Auto).unwrap();
        let k = NumberField::new(h.poly.clone()).unwrap();
        assert_eq!(betti1(&k).unwrap(), 2 * n - 2);
        let r = classify(&k).unwrap();
        assert_eq!(r.case, Case::Half, "{}", h.poly);
        assert_eq!(r.lck_rank, Some(n - 1));
    }
}
