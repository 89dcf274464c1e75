fn main() -> std::process::ExitCode {
    tieless::cli::main()
}
