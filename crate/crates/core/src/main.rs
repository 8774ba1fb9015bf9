fn main() -> std::process::ExitCode {
    quartic_points::cli::main()
}
