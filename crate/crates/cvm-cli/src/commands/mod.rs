pub mod analytics;
pub mod cluster;
pub mod consensus;
pub mod fixation;
pub mod ldcheck;
pub mod phase;
pub mod simulate;
pub mod spacetime_cmd;
