//! Named algebras used by the example registry, the CLI and the tests. All are over F_2.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::AlgebraPresentation;

const K2: &str = "name = k2\nmodulus = 2\nvertices = 1 2\narrow = a: 1 -> 2\narrow = b: 1 -> 2\n";

const K3: &str = "name = k3\nmodulus = 2\nvertices = 1 2\narrow = a: 1 -> 2\narrow = b: 1 -> 2\narrow = c: 1 -> 2\n";

const EXAMPLE4: &str = "name = example4\nmodulus = 2\nvertices = a b c\n\
arrow = alpha: b -> a\narrow = alpha': b -> a\narrow = beta: c -> b\narrow = beta': c -> b\n";

// The zero relation of the remark quiver; which composite vanishes is a choice.
const REMARK: &str = "name = remark\nmodulus = 2\nvertices = a b c\n\
arrow = alpha: b -> a\narrow = beta: c -> b\narrow = beta': c -> b\nrelation = beta.alpha\n";

const REMARK_ALT: &str = "name = remark-alt\nmodulus = 2\nvertices = a b c\n\
arrow = alpha: b -> a\narrow = beta: c -> b\narrow = beta': c -> b\nrelation = beta'.alpha\n";

// four-subspace orientation: the centre is the unique sink
const D4: &str = "name = d4\nmodulus = 2\nvertices = 0 1 2 3 4\n\
arrow = x1: 1 -> 0\narrow = x2: 2 -> 0\narrow = x3: 3 -> 0\narrow = x4: 4 -> 0\n";

pub const NAMES: [&str; 6] = ["k2", "k3", "example4", "remark", "remark-alt", "d4"];

fn load(text: &str) -> Arc<AlgebraPresentation> {
    AlgebraPresentation::parse(text).expect("builtin algebra is valid")
}

/// Kronecker algebra: two arrows `1 -> 2`.
pub fn k2() -> Arc<AlgebraPresentation> {
    load(K2)
}

/// Three arrows `1 -> 2`.
pub fn k3() -> Arc<AlgebraPresentation> {
    load(K3)
}

/// Hereditary algebra with arrows `alpha, alpha': b -> a` and `beta, beta': c -> b`.
pub fn example4() -> Arc<AlgebraPresentation> {
    load(EXAMPLE4)
}

/// `a <- b <= c` with `alpha ∘ beta = 0`; `alternate` kills `alpha ∘ beta'` instead.
pub fn remark(alternate: bool) -> Arc<AlgebraPresentation> {
    load(if alternate { REMARK_ALT } else { REMARK })
}

/// Affine type D̃4 with the centre (vertex 0) as sink.
pub fn d4() -> Arc<AlgebraPresentation> {
    load(D4)
}

pub fn by_name(name: &str) -> Result<Arc<AlgebraPresentation>> {
    match name {
        "k2" => Ok(k2()),
        "k3" => Ok(k3()),
        "example4" => Ok(example4()),
        "remark" => Ok(remark(false)),
        "remark-alt" => Ok(remark(true)),
        "d4" => Ok(d4()),
        _ => Err(Error::Precondition(format!("unknown builtin algebra {name:?}"))),
    }
}
