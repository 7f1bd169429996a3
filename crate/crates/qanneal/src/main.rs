use std::process::ExitCode;

fn main() -> ExitCode {
    // behave like a normal unix filter when the read end of a pipe closes
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    ExitCode::from(qanneal::cli::run() as u8)
}
