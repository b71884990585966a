use findim_core::decomp::IsoRegistry;
use findim_core::homology::{Caps, Session};
use findim_core::layers::Layers;
use findim_core::linalg::PrimeField;
use findim_core::rep::Representation;
use findim_core::samples;

fn example(p: u32) -> (findim_core::BoundAlgebra, Session, Layers) {
    let a = samples::five_vertex(PrimeField::new(p).unwrap());
    let mut s = Session::new(&a, 3, Caps::default());
    let l = Layers::new(&s.classify_simples().unwrap());
    (a, s, l)
}

#[test]
fn infinite_layer_lengths_of_projectives() {
    for p in [2, 3, 5] {
        let (a, _, l) = example(p);
        let lens: Vec<usize> = (0..5).map(|v| l.ll_inf(&Representation::projective(&a, v))).collect();
        assert_eq!(lens, vec![3, 2, 2, 2, 3]);
        let reg = Representation::regular(&a);
        assert_eq!(l.ll_inf(&reg), 3);
        assert_eq!(l.ll_inf_dual(&reg), 3);
        for v in 0..5 {
            let pv = Representation::projective(&a, v);
            assert_eq!(l.ll_inf_dual(&pv), lens[v]);
        }
    }
}

#[test]
fn first_projective_in_detail() {
    for p in [2, 3, 5] {
        let (a, mut s, l) = example(p);
        let p1 = Representation::projective(&a, 0);
        assert_eq!(l.s_sub(&p1).dim(), p1.total_dim());

        let chain = l.f_chain(&p1);
        assert_eq!(chain.len(), 4);
        let fs = p1.submodule(&chain[1]).0;
        assert_eq!(fs.dims(), &[4, 0, 0, 1, 1]);
        let d = s.register(&fs).unwrap();
        let mut sizes: Vec<usize> = d
            .parts
            .iter()
            .flat_map(|&(id, k)| std::iter::repeat(s.registry.module(id).total_dim()).take(k))
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        // the iterate computed on the module agrees with the chain inside P(1)
        assert!(s.registry.is_isomorphic(&l.f(&p1), &fs).unwrap());

        let f2 = p1.submodule(&chain[2]).0;
        let s1 = Representation::simple(&a, 0);
        assert!(s.registry.is_isomorphic(&f2, &s1.power(3)).unwrap());
        assert!(chain[3].is_zero());

        let qg = l.qg_chain(&p1);
        assert_eq!(qg.len(), 4);
        // β*γ1 − β*γ2 spans a copy of S(3) in soc P(1), so K(P(1)) ≠ 0
        assert_eq!(l.k_sub(&p1).dims(), vec![0, 0, 1, 0, 0]);
        assert_eq!(qg[0].total_dim(), 9);
        assert_eq!(qg[1].dims(), &[2, 1, 1, 1, 0]);
        assert!(s.registry.is_isomorphic(&qg[2], &s1).unwrap());

        assert_eq!(l.l_inf_rad(&p1), 5);
        assert_eq!(l.l_inf_soc(&p1), 4);
        assert_eq!(l.r_inf(&p1).unwrap(), 2);
        let z = l.zeta(&p1).unwrap();
        assert_eq!(z.len(), 3);
        assert_eq!(z[0], 0);
        assert_eq!(l.phi(&p1).unwrap(), 0);
        let (rad, _) = p1.submodule(&p1.radical());
        assert_eq!(l.phi(&rad).unwrap(), 0);
        // each ζ(i) satisfies the containment and the infinite-top clause
        let series = p1.radical_series();
        let layers = p1.radical_layers();
        for (i, &zi) in z.iter().enumerate() {
            assert!(i <= zi);
            assert!(l.s_within(&p1, &series[zi]).contains(&chain[i]));
            assert!(l.layer_is_infinite(&layers[zi]));
        }
        let prof = l.profile(&p1).unwrap();
        assert_eq!(prof.ll_inf_top + prof.r_inf, prof.l_inf_rad);
    }
}

#[test]
fn fourth_projective_is_radical_of_third() {
    let (a, _, l) = example(2);
    let p3 = Representation::projective(&a, 2);
    // P(4) is projective so K(rad P(3)) carries nothing of infinite pd
    let k = l.k(&p3).0;
    assert!(l.is_finitely_filtered(&k));
    let mut reg = IsoRegistry::new(&a, 0);
    let (rad, _) = p3.submodule(&p3.radical());
    assert!(reg.is_isomorphic(&rad, &Representation::projective(&a, 3)).unwrap());
}

#[test]
fn loop_algebra() {
    let a = samples::dual_numbers(PrimeField::gf2());
    let mut s = Session::new(&a, 0, Caps::default());
    let l = Layers::new(&s.classify_simples().unwrap());
    let reg = Representation::regular(&a);
    assert_eq!(l.ll_inf(&reg), 2);
    assert_eq!(l.r_inf(&reg).unwrap(), 0);
    assert!(l.k_sub(&reg).is_zero());
    assert_eq!(l.zeta(&reg).unwrap(), vec![0, 1]);
    let s1 = Representation::simple(&a, 0);
    assert!(l.phi(&Representation::zero(&a)).is_err());
    assert_eq!(l.zeta(&s1).unwrap(), vec![0]);
}

#[test]
fn no_infinite_simples() {
    let a = samples::a2(PrimeField::new(3).unwrap());
    let mut s = Session::new(&a, 0, Caps::default());
    let l = Layers::new(&s.classify_simples().unwrap());
    for v in 0..2 {
        let p = Representation::projective(&a, v);
        assert_eq!(l.l_inf_rad(&p), 0);
        assert_eq!(l.ll_inf(&p), 0);
        assert_eq!(l.k_sub(&p).dim(), p.total_dim());
        assert!(l.q(&p).0.is_zero());
        assert!(l.zeta(&p).is_err());
        assert_eq!(l.r_inf(&p).unwrap(), 0);
    }
}
