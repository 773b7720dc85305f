//! Quality and convergence condition for a few hand-built abstractions of
//! a six-state system, and how each shifts the step bound.
//!
//! ```text
//! cargo run --example abstraction_quality
//! ```

use gap::abstraction::{abstracted_k_p_bound, convergence_condition, make_transform, merge_transform, quality};
use nalgebra::DMatrix;

fn main() -> gap::Result<()> {
    let candidates = vec![
        ("identity", make_transform(DMatrix::identity(6, 6), 5)?),
        ("pairs", merge_transform(&[0, 0, 1, 1, 2, 3], 5)?),
        ("goal absorbs 4", merge_transform(&[0, 0, 1, 1, 2, 2], 5)?),
        (
            "mixing",
            make_transform(
                DMatrix::from_row_slice(
                    4,
                    6,
                    &[
                        0.8, 0.3, 0.0, 0.0, 0.0, 0.0, //
                        0.2, 0.6, 0.5, 0.1, 0.0, 0.0, //
                        0.0, 0.1, 0.5, 0.8, 0.3, 0.0, //
                        0.0, 0.0, 0.0, 0.1, 0.7, 1.0,
                    ],
                ),
                5,
            )?,
        ),
    ];
    // bound with L_max 5 and a transient norm of 0.6
    let (l, norm, thresh) = (5.0, 0.6, 0.9);
    println!("baseline bound {:.2}", abstracted_k_p_bound(thresh, l, norm)?);
    for (name, t) in candidates {
        let q = quality(&t);
        println!(
            "{name:>15}: Q {q:.3}, convergence condition {:.3}, bound {:.2}",
            convergence_condition(&t),
            abstracted_k_p_bound(thresh, l, norm / q)?
        );
    }
    Ok(())
}
