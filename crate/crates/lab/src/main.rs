fn main() {
    std::process::exit(nctrace_lab::cli::dispatch(std::env::args_os()));
}
