use std::io;

fn main() {
    let mut out = io::stdout().lock();
    let code = catalog_cli::cli_dispatch(std::env::args_os(), &mut out);
    std::process::exit(code);
}
