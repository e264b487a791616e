//! Running verification suites and rendering the report.

use nullplane::report::{run, RepairMode, Source, Suite};

fn main() {
    let source = Source::resolve("galilean-quantum").unwrap();
    let out = run(&source, &Suite::ALL, 4, RepairMode::Report, true).unwrap();
    print!("{}", out.report.render_text());
    println!("exit code {}", out.report.exit_code());
}
