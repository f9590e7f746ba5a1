//! Prints the finite-size deviation of `ln(Λ_j/Λ_0)` from the closed form for
//! each L = 4 excitation.
//!
//! Usage: `cargo run --release --example finite_size -- [x] [N ...]`

use dilute_spectra::bethe::{measure_excitation, string_constraints_check, SolverOptions};
use dilute_spectra::model::params_for;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let x: f64 = args.first().map_or(0.1, |a| a.parse().expect("x must be a number"));
    let widths: Vec<usize> = if args.len() > 1 {
        args[1..].iter().map(|a| a.parse().expect("N must be an integer")).collect()
    } else {
        vec![4, 6, 8, 10]
    };
    let params = params_for(4).unwrap();
    let opts = SolverOptions::default();
    println!("{:>2} {:>3} {:>4} {:>6} {:>12} {:>12} {:>12}", "j", "N", "ell", "signs", "deviation", "residual", "constraints");
    for j in 1..=7 {
        for &n in &widths {
            match measure_excitation(&params, j, n, x, &opts) {
                Ok(m) => {
                    let st = &m.excited.state;
                    let report = string_constraints_check(st, &opts.truncation).unwrap();
                    if std::env::var("VERBOSE").is_ok() { eprintln!("{:?} hole={:?} phases={:?}", report.entries, report.hole, st.phases()); }
                    println!(
                        "{j:>2} {n:>3} {:>4} {:>6} {:>12.3e} {:>12.3e} {:>12.3e}",
                        st.sector.ell,
                        format!("{:?}", m.excited.signs),
                        m.deviation,
                        st.residual.unwrap_or(f64::NAN),
                        report.max_residual()
                    );
                }
                Err(e) => println!("{j:>2} {n:>3} error: {e}"),
            }
        }
    }
}
