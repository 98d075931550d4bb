//! Cyclotomic cosets and binary subfield subcodes of Reed-Solomon duals:
//! when do n GF(2)-independent receptions leave no purely binary word in
//! the dual of the outer code?
//!
//!     cargo run --example rs_subfield_subcode

use fulcrum::subcode::{
    cyclotomic_cosets, rs_full_rank_guaranteed, subfield_subcode_basis, subfield_subcode_dimension,
};

fn main() -> Result<(), fulcrum::error::Error> {
    let s = 4;
    let cosets = cyclotomic_cosets(s)?;
    println!("cyclotomic cosets mod {}:", (1 << s) - 1);
    for (leader, members) in cosets.iter() {
        println!("  I_{leader:<2} = {members:?}");
    }

    println!("\n n  subcode dim  threshold says trivial");
    for n in 1..(1usize << s) {
        println!(
            "{n:>2}  {:>11}  {}",
            subfield_subcode_dimension(n, s)?,
            rs_full_rank_guaranteed(n, s)?
        );
    }

    println!("\nbasis of the binary subcode for n = 7:");
    for v in subfield_subcode_basis(7, s)? {
        let bits: String = (0..v.len())
            .map(|i| if v.get(i) { '1' } else { '0' })
            .collect();
        println!("  {bits}");
    }
    Ok(())
}
