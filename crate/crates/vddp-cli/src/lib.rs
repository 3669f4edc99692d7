pub use vddp_core;
