//! Exact computation with multi-fuzzy topological spaces on finite grids.
//!
//! Grades live on the chain `{0, 1/D, ..., 1}`, so every set, topology and
//! neighbourhood family is a finite object and every check is decided
//! exactly.

pub mod cartesian;
pub mod cover;
pub mod error;
pub mod grade;
pub mod grid;
pub mod map;
pub mod morphisms;
pub mod neighborhood;
pub mod product;
pub mod sample;
pub mod set;
pub mod topology;
pub mod universe;

pub use cartesian::{product_mixed, product_set, product_shape};
pub use cover::{
    check_compact, check_product_compact, CompactnessConfig, CompactnessReport, Cover, CoverTarget,
};
pub use error::{Error, Result};
pub use grade::{Grade, GradeChain};
pub use map::PointMap;
pub use morphisms::{compose, ContinuityCriterion, HomeomorphismCheck, SpaceMap};
pub use neighborhood::{
    is_nbd, nbd_family, nbd_from_topology, open_via_nbd, topology_from_nbd, verify_nbd_axioms,
    NbdAxiom, NbdChecks, NbdReport, NbdSystem,
};
pub use product::{product_map, product_topology, Factor, ProductMap, ProductSpace};
pub use set::{MultiFuzzySet, Positivity};
pub use topology::{verify_axioms, AxiomReport, AxiomViolation, MultiFuzzyTopology, TopologyKind};
pub use universe::{Shape, Universe};
