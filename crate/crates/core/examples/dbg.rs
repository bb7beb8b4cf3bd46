use advect_spectra::fourier::{cfl_limit, DEFAULT_EPSILON};
use advect_spectra::*;
fn main() {
    for id in SchemeId::all() {
        let rule = build_rule(id).unwrap();
        let r = cfl_limit(&rule, 1e-4, DEFAULT_EPSILON, 2048).unwrap();
        println!("{id}: nu* = {:.5}", r.nu_star);
    }
}
