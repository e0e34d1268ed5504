use std::io::Write;

pub fn run(_args: &[String], out: &mut dyn Write, _err: &mut dyn Write) -> i32 {
    let _ = writeln!(out, "normforge");
    0
}
