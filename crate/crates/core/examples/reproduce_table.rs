//! Drives the command-line front end in-process to print the table of N(q).
//!
//! ```text
//! cargo run --release --example reproduce_table -- 13
//! ```

fn main() {
    let qmax = std::env::args().nth(1).unwrap_or_else(|| "11".into());
    let args = ["ppcount", "table", "--qmax", &qmax, "--timings"];
    let code = ppcount::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
