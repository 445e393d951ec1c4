//! Round-trip a scheme through JSON, then corrupt C and watch the audit fail.

use selfsim::exact_algebra::IntPoly;
use selfsim::scheme_builder::{audit, build_vandermonde_scheme, load_scheme, save_scheme, NumericParams};

fn main() -> selfsim::error::Result<()> {
    let sc = build_vandermonde_scheme(&IntPoly::from_i64(&[-1, -1, 1]), &[1], &NumericParams::default())?;
    let text = save_scheme(&sc)?;
    println!("saved {} bytes, audit after reload: {}", text.len(), audit(&load_scheme(&text)?).passed);

    let mut v: serde_json::Value = serde_json::from_str(&text)?;
    v["C"][1][1] = "1/2".into();
    let bad = load_scheme(&v.to_string())?;
    let rep = audit(&bad);
    println!("with C[1][1] = 1/2: passed = {}", rep.passed);
    for m in &rep.abc.messages {
        println!("  {m}");
    }
    Ok(())
}
