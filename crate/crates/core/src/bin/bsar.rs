fn main() {
    std::process::exit(bsar::cli::run(std::env::args_os()));
}
