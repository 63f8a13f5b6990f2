//! Canonical elements F_mj, S_rt and the lemma checks built on them.

use qmatball::canonical::{build_fmj, build_srt, check_fg, check_g, check_l1, check_l2, LemmaContext};

fn main() -> qmatball::Result<()> {
    println!("F_13 = {}", build_fmj(1, 3)?);
    println!("S_12 = {}", build_srt(1, 2)?);
    let ctx = LemmaContext::new(3, 2, 0);
    for r in [check_l1(&ctx)?, check_l2(&ctx)?, check_g(&ctx)?, check_fg(&ctx, 2)?] {
        println!("{}", r.summary());
    }
    Ok(())
}
