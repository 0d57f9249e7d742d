//! Run the acceptance suite and print one line per criterion.

fn main() -> fraisse::Result<()> {
    let results = fraisse::acceptance::run_suite("core")?;
    for r in &results {
        println!("{r}");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
    Ok(())
}
