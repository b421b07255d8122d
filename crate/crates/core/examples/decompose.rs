//! Greedy decomposition of a polynomial signal, then a JSON report.

use slice_afd::afd::{afd_decompose, AfdReport, SearchConfig};
use slice_afd::fixtures::{random_polynomial, rng};

fn main() -> slice_afd::Result<()> {
    let mut r = rng(3);
    let f = random_polynomial(&mut r, 10, 256);
    let cfg = SearchConfig::default();
    let state = afd_decompose(&f, 12, 1e-10, &cfg);

    println!("step  |a_k|     energy        remainder");
    for (k, (a, e)) in state.params().iter().zip(state.energies()).enumerate() {
        println!(
            "{:>4}  {:.4}  {:.6e}  {:.6e}",
            k + 1,
            a.norm(),
            e,
            state.remainder_norms()[k + 1]
        );
    }
    let report = AfdReport::new(&state, &cfg, None);
    let rebuilt = report.reconstruct(report.steps)?;
    println!("remainder from report {:.6e}", f.sub(&rebuilt).norm());
    println!("{}", serde_json::to_string(&report.params)?);
    Ok(())
}
