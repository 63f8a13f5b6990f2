//! Words in U_q sl_2n: parsing, the Hopf structure and the defining relations.

use qmatball::parse::parse_word;
use qmatball::uqsl::{ad, antipode, coproduct, counit, defining_relations, star, UWord};

fn main() -> qmatball::Result<()> {
    let w = parse_word("E2*Fmj(1,2)")?;
    println!("E2*Fmj(1,2) = {}", w);
    println!("S(E1) = {}", antipode(&UWord::e(1)));
    println!("eps(K1) = {}", counit(&UWord::k(1)));
    println!("Delta(E1) has {} terms", coproduct(&UWord::e(1)).terms.len());
    println!("ad(E1; F2) = {}", ad(&UWord::e(1), &UWord::f(2)));
    println!("E2* = {}", star(&UWord::e(2), 2));
    let rels = defining_relations(3);
    let serre = rels.iter().find(|(name, _)| name.starts_with("Serre")).expect("Serre relations");
    println!("U_q sl_4 has {} defining relations, e.g. {}: {} = 0", rels.len(), serre.0, serre.1);
    Ok(())
}
