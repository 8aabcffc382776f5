use std::sync::Arc;

use relidem_core::adjunction::{
    adjunction_idempotence_report, algebra_resolution, enumerate_resolution_morphisms, idem_algebra_resolution,
    kleisli_resolution, RelAdjunction, Resolution, LAW_PHI_NATURAL_C,
};
use relidem_core::algebra::{build_algebra_category, DEFAULT_ALGEBRA_CAP};
use relidem_core::relmonad::RelMonad;
use relidem_core::workspace::gallery_build;
use relidem_core::{Error, Workspace};

const GALLERY: [&str; 4] = ["paper-idem-not-alg", "paper-alg-not-free", "trivial", "split-endo"];

fn gallery(name: &str) -> Arc<RelMonad> {
    gallery_build(name).unwrap().monad("T").unwrap().monad.clone()
}

const TWO_MAPS: &str = "\
category One { objects: star; }
category E {
  objects: j, t, e;
  arrows: eta : j -> t, f : t -> e, g : t -> e;
}
functor J : One -> E { objects: star |-> j; }
";

#[test]
fn kleisli_and_algebra_resolutions_induce_the_monad() {
    for name in GALLERY {
        let t = gallery(name);
        let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).unwrap();
        let kl = kleisli_resolution(&t, Some(&alg)).unwrap();
        assert!(kl.adjunction.check_laws().is_ok(), "{name}");
        assert!(kl.adjunction.is_resolution_of(&t), "{name}");
        let a = algebra_resolution(&alg).unwrap();
        assert!(a.check_laws().is_ok(), "{name}");
        assert!(a.is_resolution_of(&t), "{name}");
        assert!(!a.is_resolution_of(&RelMonad::trivial(t.root().clone())) || name == "trivial");
    }
}

#[test]
fn kleisli_sizes() {
    for name in ["paper-idem-not-alg", "paper-alg-not-free"] {
        let kl = kleisli_resolution(&gallery(name), None).unwrap();
        assert_eq!((kl.category.objects(), kl.category.morphisms()), (1, 1), "{name}");
        assert!(kl.to_image.is_fully_faithful());
        assert!(kl.to_algebras.is_none());
    }
    let kl = kleisli_resolution(&gallery("split-endo"), None).unwrap();
    assert!(!kl.to_image.is_full());
}

#[test]
fn reflectivity_of_the_kleisli_right_adjoint_tracks_idempotence() {
    for name in GALLERY {
        let t = gallery(name);
        let kl = kleisli_resolution(&t, None).unwrap();
        assert_eq!(kl.adjunction.is_j_reflective().unwrap(), t.is_idempotent(), "{name}");
    }
}

#[test]
fn forgetful_functor_reflectivity() {
    let alg = build_algebra_category(&gallery("paper-alg-not-free"), DEFAULT_ALGEBRA_CAP).unwrap();
    assert!(algebra_resolution(&alg).unwrap().is_j_reflective().unwrap());
    let alg = build_algebra_category(&gallery("paper-idem-not-alg"), DEFAULT_ALGEBRA_CAP).unwrap();
    assert!(!algebra_resolution(&alg).unwrap().is_j_reflective().unwrap());
    let idem = idem_algebra_resolution(&alg).unwrap().unwrap();
    assert!(idem.is_j_reflective().unwrap());
}

#[test]
fn idempotence_of_induced_monads() {
    let report = |name: &str| {
        let kl = kleisli_resolution(&gallery(name), None).unwrap();
        let r = adjunction_idempotence_report(&kl.adjunction).unwrap();
        (r.idempotent, r.algebraically_idempotent)
    };
    assert_eq!(report("paper-idem-not-alg"), (true, false));
    assert_eq!(report("paper-alg-not-free"), (true, true));
    assert_eq!(report("trivial"), (true, true));
    assert_eq!(report("split-endo"), (false, false));
}

#[test]
fn a_swapped_transposition_breaks_naturality() {
    let ws = Workspace::from_text(TWO_MAPS).unwrap();
    let t = Arc::new(RelMonad::trivial(ws.functor("J").unwrap().functor.clone()));
    let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).unwrap();
    let adj = algebra_resolution(&alg).unwrap();
    let mut phi = adj.phi_table().to_vec();
    let entry = phi.iter_mut().find(|row| row.len() >= 2).unwrap();
    entry.swap(0, 1);
    match RelAdjunction::new(adj.root().clone(), adj.left().clone(), adj.right().clone(), phi) {
        Err(Error::Laws(r)) => assert!(r.violations_of(LAW_PHI_NATURAL_C).count() > 0),
        other => panic!("expected a naturality failure, got {other:?}"),
    }
}

#[test]
fn resolution_morphisms_out_of_the_kleisli_resolution() {
    for name in GALLERY {
        let t = gallery(name);
        let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).unwrap();
        let kl = Resolution::new(kleisli_resolution(&t, None).unwrap().adjunction, t.clone()).unwrap();
        let em = Resolution::new(algebra_resolution(&alg).unwrap(), t.clone()).unwrap();
        assert_eq!(enumerate_resolution_morphisms(&kl, &em, 64).unwrap().len(), 1, "{name}");
        assert_eq!(enumerate_resolution_morphisms(&kl, &kl, 64).unwrap().len(), 1, "{name}");
    }
}

#[test]
fn idempotent_algebras_are_terminal_among_reflective_resolutions() {
    let t = gallery("paper-idem-not-alg");
    let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).unwrap();
    let idem = Resolution::new(idem_algebra_resolution(&alg).unwrap().unwrap(), t.clone()).unwrap();
    let kl = Resolution::new(kleisli_resolution(&t, None).unwrap().adjunction, t.clone()).unwrap();
    for src in [&kl, &idem] {
        assert_eq!(enumerate_resolution_morphisms(src, &idem, 64).unwrap().len(), 1);
    }
}

#[test]
fn a_resolution_of_another_monad_is_refused() {
    let t = gallery("paper-idem-not-alg");
    let kl = kleisli_resolution(&t, None).unwrap();
    let other = Arc::new(RelMonad::trivial(t.root().clone()));
    assert!(matches!(Resolution::new(kl.adjunction, other), Err(Error::Precondition(_))));
}
