//! Model geometries: 1D profiles with exact calculus, toric flow tubes,
//! flow boxes, trigonometric 3-torus fields, and toral suspensions.

pub mod file;
pub mod flowbox;
pub mod profile;
pub mod suspension;
pub mod trig3;
pub mod tube;

pub use file::{parse_model_file, parse_model_str, ModelFile};
pub use flowbox::FlowBoxField;
pub use profile::{BumpProfile1D, ScalarProfile1D};
pub use suspension::CatSuspension;
pub use trig3::{TrigField3T, TrigKind, TrigPoly2, TrigTerm};
pub use tube::{tube_boundary_class_set, TubeProfile};
