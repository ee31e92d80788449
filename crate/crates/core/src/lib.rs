pub mod analytic;
pub mod exec;
pub mod feshbach;
pub mod numerics;
pub mod params;
pub mod potentials;
pub mod records;
pub mod specfun;
