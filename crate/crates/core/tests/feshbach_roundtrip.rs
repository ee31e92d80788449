use jostkohn::exec::{geometric_grid, Execution};
use jostkohn::feshbach::{map_to_scattering, parse_params};
use jostkohn::numerics::{fit_effective_range, numerov_phase_curve, ERE_K_MAX, ERE_K_MIN};
use jostkohn::params::derive_params;
use jostkohn::potentials::{Potential, PotentialKind};

// r0 = 2 * 50 - 1 / (1000 * 50 * 1e-3) = 99.98 bohr
fn file(b: f64) -> String {
    format!("units = atomic\nB = {b}\nB0 = 800\nDelta = 10\na_bg = 50\nGamma0 = 1e-3\nmu = 1000\n")
}

#[test]
fn mapped_parameters_survive_the_ere_fit() {
    // a_s = 500 / (800 - B) in bohr
    for (b, want_reduced) in [(800.0 - 500.0 / (60.0 * 99.98), 60.0), (800.0 + 500.0 / (80.0 * 99.98), -80.0)] {
        let m = map_to_scattering(&parse_params(&file(b)).unwrap()).unwrap();
        let a = m.params.reduced_scattering_length().unwrap();
        assert!((a - want_reduced).abs() < 1e-9 * want_reduced.abs(), "{a}");
        let d = derive_params(&m.params).unwrap();
        let kind = if a < 0.0 { PotentialKind::VMinus } else { PotentialKind::VPlus };
        let pot = Potential::new(kind, d).unwrap();
        let ks = geometric_grid(ERE_K_MIN, ERE_K_MAX, 12);
        let curve = numerov_phase_curve(&pot, &ks, Execution::default()).unwrap();
        let fit = fit_effective_range(&curve).unwrap();
        assert!((fit.a_s / a - 1.0).abs() < 0.01, "{fit:?} vs {a}");
        let fit_r0_physical = fit.r0 * m.conversion.r0;
        assert!((fit_r0_physical / 99.98 - 1.0).abs() < 0.05);
    }
}
