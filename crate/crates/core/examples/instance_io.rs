//! Generate a seeded instance, write it to the text format and read it back.
//!
//! ```text
//! cargo run --example instance_io -- 8 16 42
//! ```

use ising_npp::instance::{generate, normalize, parse, serialize};

fn main() -> ising_npp::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, bits, seed) = match args[..] {
        [n, b, s] => (n as usize, b as u32, s),
        _ => (8, 16, 42),
    };

    let inst = generate(n, bits, seed)?;
    let text = serialize(&inst);
    print!("{text}");

    let back = parse(&text)?;
    assert_eq!(back, inst);
    println!("# round trip ok, total weight {}", inst.total());

    let norm = normalize(&inst);
    println!("# normalized by {}: {:?}", norm.scale, norm.ratios);

    // Malformed input reports the offending line.
    if let Err(e) = parse("npp v1 n=2 bits=4 seed=none\n3\n99\n") {
        println!("# rejected: {e}");
    }
    Ok(())
}
