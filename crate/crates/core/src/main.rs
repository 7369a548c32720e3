use std::io;

fn main() {
    let level = std::env::var(besselnu::cli::MAX_LEVEL_ENV).ok();
    let code = besselnu::cli::run(
        std::env::args_os(),
        level.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
