fn main() {
    std::process::exit(srfds_cli::run());
}
