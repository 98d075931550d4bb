//! Sparse inner coding vectors: mean receptions against their bounds.
//!
//!     cargo run --release --example sparse_inner

use fulcrum::analysis::{sparse_expected_bound, sparse_fixed_density_bound, sparse_limit};
use fulcrum::decoder::DecoderKind;
use fulcrum::inner::SparsityMode;
use fulcrum::sim::{run, SimConfig};

fn main() -> Result<(), fulcrum::error::Error> {
    let (n, r) = (32, 8);
    let modes = [
        (
            SparsityMode::FixedNonzeros { k: 3 },
            sparse_expected_bound(n, r, 3)?,
        ),
        (
            SparsityMode::FixedNonzeros { k: 6 },
            sparse_expected_bound(n, r, 6)?,
        ),
        (
            SparsityMode::FixedDensity { rho: 0.1 },
            sparse_fixed_density_bound(n, r, 0.1)?,
        ),
        (
            SparsityMode::FixedDensity { rho: 0.5 },
            sparse_fixed_density_bound(n, r, 0.5)?,
        ),
    ];
    for (mode, bound) in modes {
        let mut c = SimConfig::broadcast(n, r, &[0.0], &[DecoderKind::Outer]);
        c.field_bits = 16;
        c.inner.sparsity = mode;
        c.trials = 2000;
        let res = run(&c)?;
        println!(
            "{mode:?}: mean {:.3} receptions, bound {bound:.3}",
            res.receivers[0].receptions.mean()
        );
    }
    for k in [3.0, 4.0, 6.0] {
        println!("large-r factor for k = {k}: {:.4}", sparse_limit(k));
    }
    Ok(())
}
