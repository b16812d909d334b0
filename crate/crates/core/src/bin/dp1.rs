fn main() {
    std::process::exit(dp1::cli::dispatch(std::env::args_os()));
}
