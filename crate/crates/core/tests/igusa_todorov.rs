use findim_core::homology::{syzygy_power, Caps, PdStatus, Session};
use findim_core::igusa_todorov::{findim_of_class, phi, psi, PhiParams};
use findim_core::linalg::PrimeField;
use findim_core::random::{monomial_algebra, random_module, AlgebraShape};
use findim_core::rep::Representation;
use findim_core::samples;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn small_cases() {
    let d = samples::dual_numbers(PrimeField::gf2());
    let mut s = Session::new(&d, 0, Caps::default());
    let simple = Representation::simple(&d, 0);
    let r = phi(&mut s, &simple, PhiParams::default()).unwrap();
    assert_eq!((r.phi, r.ranks[0], r.stable), (0, 1, true));
    assert!(r.ranks.iter().all(|&k| k == 1));
    assert_eq!(psi(&mut s, &simple, PhiParams::default()).unwrap().psi, 0);
    let proj = Representation::projective(&d, 0);
    let r = phi(&mut s, &proj, PhiParams::default()).unwrap();
    assert_eq!(r.phi, 0);
    assert!(s.registry.non_projective(&r.c_m).is_empty());
    assert_eq!(findim_of_class(&mut s, &[simple.clone()]).unwrap(), 0);

    let a = samples::a2(PrimeField::gf2());
    let mut s = Session::new(&a, 0, Caps::default());
    let simples = [Representation::simple(&a, 0), Representation::simple(&a, 1)];
    assert_eq!(findim_of_class(&mut s, &simples).unwrap(), 1);
    assert_eq!(findim_of_class(&mut s, &[Representation::projective(&a, 0)]).unwrap(), 0);
    assert_eq!(psi(&mut s, &simples[0], PhiParams::default()).unwrap().psi, 1);
}

#[test]
fn psi_of_sigma_syzygies_vanishes() {
    for p in [2, 3, 5] {
        let a = samples::five_vertex(PrimeField::new(p).unwrap());
        let mut s = Session::new(&a, 5, Caps::default());
        let sigma = s.classify_simples().unwrap().sigma(&a);
        let m = syzygy_power(&a, &sigma, 3).direct_sum(&syzygy_power(&a, &sigma, 4));
        let r = psi(&mut s, &m, PhiParams::default()).unwrap();
        assert_eq!(r.psi, 0, "p = {p}");
        assert!(r.phi.stable);
        let t = Representation::simple(&a, 0);
        assert_eq!(psi(&mut s, &t, PhiParams::default()).unwrap().psi, 0);
    }
}

#[test]
fn phi_matches_finite_pd() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let shape = AlgebraShape { max_dim: 24, ..AlgebraShape::default() };
    let mut finite = 0;
    for round in 0..16 {
        let a = monomial_algebra(&mut rng, PrimeField::gf2(), shape);
        let mut s = Session::new(&a, round, Caps::default());
        for _ in 0..6 {
            let m = random_module(&mut rng, &a, 12);
            let r = phi(&mut s, &m, PhiParams::default()).unwrap();
            assert!(r.ranks.windows(2).all(|w| w[0] >= w[1]), "{:?}", r.ranks);
            assert!(r.stable);
            let ps = psi(&mut s, &m, PhiParams::default()).unwrap();
            match s.pd(&m).unwrap() {
                PdStatus::Finite(n) => {
                    finite += 1;
                    assert_eq!(r.phi, n);
                    assert_eq!(ps.psi, n);
                }
                PdStatus::Infinite(_) => {
                    let d = s.register(&m).unwrap();
                    if d.count() == 1 {
                        assert_eq!(ps.psi, 0);
                    }
                }
                PdStatus::Unknown(_) => panic!("caps"),
            }
        }
    }
    assert!(finite > 20, "{finite}");
}
