fn main() {
    std::process::exit(intervalcert::cli::dispatch(std::env::args_os()));
}
