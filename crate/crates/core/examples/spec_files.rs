// Reading a spec file and running its command, as the command-line tool does.

use std::error::Error;

use twogroup::spec_file::{parse_spec, run, run_command, Command, CommandKind};

const SPEC: &str = "
[group G]
cyclic = 4

[group H]
cyclic = 2

[hom i]
source = G
target = H
map = 0 1 0 1

[crossed X]
boundary = i

[command]
run = cohomology
coeff = GF(2)
max-degree = 3
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = parse_spec(SPEC)?;
    let report = run(&spec)?;
    println!("{} → {} with betti {}", report.command.name(), report.status, report.result["betti"]);

    let mut nerve = Command::new(CommandKind::Nerve);
    nerve.set("max-level", "2");
    let levels = run_command(&spec, &nerve)?;
    println!("nerve levels: {}", levels.result["levels"]);

    match parse_spec("[group G]\ncyclic = 4\n[hom i]\nsource = G\ntarget = K\nmap = 0 0 0 0\n") {
        Err(e) => println!("rejected: {e} (exit status {})", e.exit_code()),
        Ok(_) => println!("accepted"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
