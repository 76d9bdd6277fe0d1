pub mod bennett;
pub mod cli;
pub mod energy;
pub mod grc;
pub mod twolal;
