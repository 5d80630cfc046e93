//! Parsing, printing and JSON serialization of superfunctions.

use oddsym::expr::{from_json, parse, parse_in, to_json};
use oddsym::superalgebra::ChartId;

pub fn run_example() -> oddsym::Result<()> {
    let f = parse("(x1^2 - 3*I*x2)/(x1 + 1)*th1*th2 - 1/3*eps1*th2 + D(x2^3*th1, x2)")?;
    println!("{f}");
    let json = serde_json::to_string_pretty(&to_json(&f)).expect("serializable");
    println!("{json}");
    let back = from_json(&serde_json::from_str(&json).expect("valid json"))?;
    println!("round trip: {}", back == f);
    println!("reparsed print: {}", parse(&f.to_string())? == f);

    for bad in ["x1 + ", "x1 * q2", "1/th1"] {
        if let Err(e) = parse_in(bad, ChartId(0)) {
            println!("{bad:?}: {e}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}
