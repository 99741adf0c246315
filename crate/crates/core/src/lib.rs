pub mod catalog;
pub mod equation;
pub mod error;
pub mod format;
pub mod modal;
pub mod modality;
pub mod ops;
pub mod order;
pub mod repr;
pub mod suites;
pub mod term;

pub use catalog::{CatalogEntry, Structure};
pub use equation::Verdict;
pub use error::{Error, Result};
pub use format::Document;
pub use modal::{AlgebraProfile, Class, ClassFlags};
pub use modality::{Letter, ModalWord};
pub use ops::OpTable;
pub use order::{Elem, FiniteLattice, FinitePoset};
pub use repr::UpsetAlgebra;
pub use suites::Suite;
pub use term::{Identity, Law, Term, Unary};
