//! Evaluating expressions against a JSON instance.

use condkit::cli::dsl::eval_source;
use condkit::cli::json::Instance;

fn main() -> condkit::Result<()> {
    let inst = Instance::from_json(include_str!("data/weather.json"))?;
    for v in eval_source(&inst, include_str!("data/weather.cdsl"), 8)? {
        println!("{v}");
    }
    Ok(())
}
