use clap::Parser;
use ybe_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (outcome, json) = run(&cli);
    if json {
        println!("{}", serde_json::to_string_pretty(&outcome.json).expect("report serializes"));
    } else {
        println!("{}", outcome.text);
    }
    std::process::exit(outcome.code);
}
