//! Instance catalog and one checker per verified result.

mod catalog;
mod instance;
mod verdict;
mod verify;

pub use catalog::{catalog, find};
pub use instance::{
    ActionSpec, FiniteSetting, FuncSetting, Instance, InstanceFile, Setting, SubringSpec, COLLAPSE_TAG,
    NEGATIVE_TAG,
};
pub use verdict::{Confidence, Report, SettingKind, Status, TheoremId, Verdict, SCHEMA};
pub use verify::{instance_seed, random_representation, run_all, run_instance, verify, verify_setting};
