//! Driving the command-line front end in process: construct, then verify and classify.

use std::io::Cursor;

fn run(args: &[&str], input: &str) -> (i32, String) {
    let argv = std::iter::once("detrep").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = detrep::cli::run(argv, &mut Cursor::new(input.as_bytes()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn main() {
    let (_, pencil) = run(&["construct", "--kind", "pfaff-decomposable", "--lambda", "13/4", "--t", "4", "--s", "3"], "");
    println!("pencil: {}", pencil.trim());
    for cmd in [&["verify"][..], &["pf"], &["classify"]] {
        let (code, out) = run(cmd, &pencil);
        println!("{:9} exit {code}: {}", cmd[0], out.trim());
    }
    let (code, out) = run(&["construct", "--kind", "pfaff-decomposable", "--lambda", "13/4", "--t", "4", "--s", "2"], "");
    println!("bad point exit {code}: {}", out.trim());
}
