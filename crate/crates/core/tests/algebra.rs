use std::sync::Arc;

use relidem_core::algebra::{
    algebra_from_orthogonal_carrier, algebra_idempotence_report, all_maps_into_are_algebra_morphisms,
    build_algebra_category, enumerate_algebras, is_algebraically_idempotent, is_j_ary, morphism_induced_functor,
    RelAlgebra, DEFAULT_ALGEBRA_CAP, LAW_ALG_UNIT,
};
use relidem_core::enumerate::enumerate_monads;
use relidem_core::relmonad::{RelMonad, RelMonadMorphism};
use relidem_core::workspace::gallery_build;
use relidem_core::{Error, FinCat, FinFunctor, Workspace};

fn gallery(name: &str) -> Arc<RelMonad> {
    gallery_build(name).unwrap().monad("T").unwrap().monad.clone()
}

// Two parallel maps out of t that stay distinct after the unit.
const TWO_MAPS: &str = "\
category One { objects: star; }
category E {
  objects: j, t, e;
  arrows: eta : j -> t, f : t -> e, g : t -> e;
}
functor J : One -> E { objects: star |-> j; }
relmonad T over J { carrier: star |-> t; unit: star |-> eta; }
algebra A for T { carrier: e; ext: (star, f.eta) |-> f, (star, g.eta) |-> g; }
";

#[test]
fn declared_and_free_algebras_satisfy_the_laws() {
    let ws = gallery_build("paper-idem-not-alg").unwrap();
    for a in &ws.algebras {
        assert!(a.algebra.check_laws().is_ok(), "{}", a.name);
    }
    for name in ["paper-idem-not-alg", "paper-alg-not-free", "trivial", "split-endo"] {
        let t = gallery(name);
        for b in 0..t.source().objects() {
            let free = RelAlgebra::free(t.clone(), b);
            assert!(free.check_laws().is_ok(), "{name}");
            assert_eq!(free.carrier(), t.carrier(b));
        }
    }
}

#[test]
fn a_crossed_extension_entry_breaks_the_unit_law() {
    let ws = Workspace::from_text(TWO_MAPS).unwrap();
    let good = &ws.algebra("A").unwrap().algebra;
    assert!(good.is_idempotent());
    let mut ext = good.ext_table().to_vec();
    let first = ext[0][0];
    ext[0][1] = first;
    match RelAlgebra::new(good.monad().clone(), good.carrier(), ext) {
        Err(Error::Laws(r)) => assert_eq!(r.violations_of(LAW_ALG_UNIT).count(), 1),
        other => panic!("expected a law violation, got {other:?}"),
    }
}

#[test]
fn algebra_counts_per_carrier() {
    let t = gallery("paper-idem-not-alg");
    let e = t.cat();
    let on = |name: &str| enumerate_algebras(&t, Some(e.find_object(name).unwrap()));
    assert_eq!(on("e").len(), 2);
    assert_eq!(on("j").len(), 0);
    assert_eq!(on("t").len(), 1);

    let triv = gallery("trivial");
    let all = enumerate_algebras(&triv, None);
    assert_eq!(all.len(), triv.cat().objects());
    let mut carriers: Vec<_> = all.iter().map(|a| a.carrier()).collect();
    carriers.sort_unstable();
    assert_eq!(carriers, (0..triv.cat().objects()).collect::<Vec<_>>());
}

#[test]
fn idempotent_algebras() {
    let t = gallery("paper-idem-not-alg");
    for a in enumerate_algebras(&t, Some(t.cat().find_object("e").unwrap())) {
        let r = algebra_idempotence_report(&a).unwrap();
        assert!(r.agree());
        assert!(!r.idempotent());
    }
    let t = gallery("paper-alg-not-free");
    let a = algebra_from_orthogonal_carrier(&t, t.cat().find_object("e").unwrap()).unwrap();
    assert!(a.is_idempotent());
    assert!(a.summary().free_on.is_empty());
    let triv = gallery("trivial");
    assert!(enumerate_algebras(&triv, None).iter().all(RelAlgebra::is_idempotent));
}

#[test]
fn algebraic_idempotence_on_the_gallery() {
    let r = is_algebraically_idempotent(&gallery("paper-idem-not-alg")).unwrap();
    assert!(!r.holds);
    let witness = r.counterexample.unwrap();
    assert_eq!(witness.carrier(), witness.monad().cat().find_object("e").unwrap());
    assert!(is_algebraically_idempotent(&gallery("paper-alg-not-free")).unwrap().holds);
    assert!(is_algebraically_idempotent(&gallery("trivial")).unwrap().holds);
}

#[test]
fn orthogonal_carriers() {
    let t = gallery("paper-idem-not-alg");
    assert!(matches!(
        algebra_from_orthogonal_carrier(&t, t.cat().find_object("e").unwrap()),
        Err(Error::NonUniqueExtension { .. })
    ));
    let t = gallery("paper-alg-not-free");
    let e = t.cat().find_object("e").unwrap();
    let a = algebra_from_orthogonal_carrier(&t, e).unwrap();
    assert_eq!(enumerate_algebras(&t, Some(e)), vec![a]);
}

#[test]
fn maps_into_idempotent_algebras_are_morphisms() {
    let ws = gallery_build("paper-idem-not-alg").unwrap();
    let t = ws.monad("T").unwrap().monad.clone();
    assert!(!all_maps_into_are_algebra_morphisms(&t, &ws.algebra("Af'").unwrap().algebra).unwrap());
    let t = gallery("paper-alg-not-free");
    for a in enumerate_algebras(&t, None) {
        assert!(all_maps_into_are_algebra_morphisms(&t, &a).unwrap());
    }
}

#[test]
fn algebra_category_sizes() {
    let alg = build_algebra_category(&gallery("paper-alg-not-free"), DEFAULT_ALGEBRA_CAP).unwrap();
    assert_eq!((alg.category.objects(), alg.category.morphisms()), (2, 3));
    assert!(alg.forgetful.is_fully_faithful());

    let alg = build_algebra_category(&gallery("paper-idem-not-alg"), DEFAULT_ALGEBRA_CAP).unwrap();
    assert!(!alg.forgetful.is_full());
    assert_eq!(alg.idempotent.len(), 1);

    let alg = build_algebra_category(&gallery("trivial"), DEFAULT_ALGEBRA_CAP).unwrap();
    assert!(alg.forgetful.is_isomorphism());
    assert_eq!(alg.idempotent.len(), alg.algebras.len());
}

#[test]
fn algebra_category_cap_is_enforced() {
    assert!(build_algebra_category(&gallery("paper-idem-not-alg"), 1).is_err());
}

#[test]
fn identity_morphism_induces_the_identity() {
    let t = gallery("paper-idem-not-alg");
    let induced = morphism_induced_functor(&RelMonadMorphism::identity((*t).clone()), DEFAULT_ALGEBRA_CAP).unwrap();
    assert!(induced.functor.is_isomorphism());
    assert_eq!(induced.functor.ob_map(), (0..induced.source.algebras.len()).collect::<Vec<_>>());
}

#[test]
fn arity_along_the_identity_and_a_point() {
    let e = Arc::new(FinCat::chain(2));
    for m in enumerate_monads(&e, usize::MAX - 1).items {
        let t = Arc::new(m.to_relative().unwrap());
        let along_id = is_j_ary(&t, &FinFunctor::identity(e.clone()), DEFAULT_ALGEBRA_CAP).unwrap();
        assert!(along_id.holds);
        let (a, b) = along_id.transfer.unwrap();
        assert_eq!(a, b);

        let bottom = FinFunctor::point(Arc::new(FinCat::terminal()), e.clone(), 0);
        let r = is_j_ary(&t, &bottom, DEFAULT_ALGEBRA_CAP).unwrap();
        if let Some((a, b)) = r.transfer {
            assert!(r.holds);
            assert_eq!(a, b);
        }
    }
}
