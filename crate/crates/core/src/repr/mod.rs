//! Highest-weight modules, characters, and one-dimensional modules.

pub mod character;
pub mod linalg;
pub mod module;
pub mod onedim;

pub use character::{character_module_crosscheck, truncated_character, CharacterSeries};
pub use linalg::Matrix;
pub use module::{averaging_idempotent, build_highest_weight_module, sector_check, Sector, WeightModule};
pub use onedim::{onedim_relation_check, onedim_wbar_modules, wbar_gate_violation};
