//! Transition maps between isotypic components and the word-sum scalar.

use qmatball::isotypic::Signature;
use qmatball::transitions::{check_factorization, prop21_evaluate, up_map, Column, TransitionContext};

fn main() -> qmatball::Result<()> {
    let ctx = TransitionContext::new(2, 0);
    let m = up_map(&ctx, &Signature(vec![1, 0]), 1)?;
    println!("(1,0) -> (2,0): rank {}", m.rank());
    println!("{}", check_factorization(&ctx, 1)?.summary());
    for k in [[0, 0], [1, 0], [1, 1]] {
        let out = prop21_evaluate(&ctx, &Signature(k.to_vec()), 1, Column::Reversed)?;
        println!(
            "k = {:?}, j = 1: scalar {}, ratio to the closed form s^{}",
            k,
            out.scalar.as_ref().map(|s| s.to_string()).unwrap_or_default(),
            out.ratio_half_power().map_or("?".to_string(), |e| e.to_string())
        );
    }
    Ok(())
}
