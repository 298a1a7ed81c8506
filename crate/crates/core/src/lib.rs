pub mod cocycle;
pub mod error;
pub mod fieldalg;
pub mod flatpot;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod poset;
pub mod sectors;
pub mod zlinalg;

pub use cocycle::{HolonomyRep, PathFrame, UnitaryCocycle};
pub use error::{Error, Result};
pub use fieldalg::{FieldCocycle, FieldLetter, FieldWord, Scalar};
pub use flatpot::{AbelianCocycle, FlatPotential};
pub use homotopy::{GroupWord, Homotopy, Pi1Presentation, PosetPath, Step};
pub use linalg::{CMatrix, C64};
pub use poset::{build_net, BaseComplex, CausalPoset, DiamondId, NetKind, ValidationReport, VertexId};
pub use sectors::{SectorReport, Twist};
