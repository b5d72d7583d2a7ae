use nspec_core::hodge::{slice_spectra, slice_beta};
use nspec_core::polyparse::Support;

fn main() {
    let s = Support::from_points(2, vec![vec![4, 6]]).unwrap();
    let slices= slice_spectra(&s).unwrap();
    for d in &slices {
        println!("axis {} mu {} alphas {:?}", d.axis, d.mu, d.alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>());
        match slice_beta(&s, d) {
            Ok(f) => println!("  betas {:?}", f.betas.unwrap().iter().map(|b| b.to_string()).collect::<Vec<_>>()),
            Err(e) => println!("  error: {e}"),
        }
    }
}
