pub mod exact;
pub mod forms;
pub mod dioph;
pub mod classifier;
pub mod oracle;
pub mod cli;
