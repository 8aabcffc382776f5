use super::Workspace;
use crate::error::{Error, Result};

/// Names of the built-in instances. Each declares a relative monad `T`.
pub const GALLERY: [&str; 4] = ["paper-idem-not-alg", "paper-alg-not-free", "trivial", "split-endo"];

const IDEM_NOT_ALG: &str = "\
category One { objects: star; }
category E {
  objects: j, t, e;
  arrows: eta : j -> t, f : t -> e, f' : t -> e;
  relations: f.eta = f'.eta;
}
functor J : One -> E { objects: star |-> j; }
relmonad T over J {
  carrier: star |-> t;
  unit: star |-> eta;
  ext: (star, star, eta) |-> id_t;
}
algebra Af for T { carrier: e; ext: (star, f.eta) |-> f; }
algebra Af' for T { carrier: e; ext: (star, f.eta) |-> f'; }
";

// Extensions omitted: both the monad and the algebra on e are forced.
const ALG_NOT_FREE: &str = "\
category One { objects: star; }
category E {
  objects: j, t, e;
  arrows: eta : j -> t, f : t -> e;
}
functor J : One -> E { objects: star |-> j; }
relmonad T over J { carrier: star |-> t; unit: star |-> eta; }
algebra A for T { carrier: e; }
";

const TRIVIAL: &str = "\
category One { objects: star; }
category E { objects: c0, c1; arrows: u : c0 -> c1; }
functor J : One -> E { objects: star |-> c0; }
relmonad T over J { carrier: star |-> c0; unit: star |-> id_c0; }
";

const SPLIT_ENDO: &str = "\
category One { objects: star; }
category E {
  objects: j, t;
  arrows: eta : j -> t, p : t -> j;
  relations: p.eta = id_j;
}
functor J : One -> E { objects: star |-> j; }
relmonad T over J {
  carrier: star |-> t;
  unit: star |-> eta;
  ext: (star, star, eta) |-> id_t;
}
";

pub fn gallery_source(name: &str) -> Option<&'static str> {
    match name {
        "paper-idem-not-alg" => Some(IDEM_NOT_ALG),
        "paper-alg-not-free" => Some(ALG_NOT_FREE),
        "trivial" => Some(TRIVIAL),
        "split-endo" => Some(SPLIT_ENDO),
        _ => None,
    }
}

pub fn gallery_build(name: &str) -> Result<Workspace> {
    let src = gallery_source(name).ok_or_else(|| Error::UnknownName {
        kind: "gallery instance",
        name: name.to_string(),
    })?;
    Workspace::from_text(src)
}
