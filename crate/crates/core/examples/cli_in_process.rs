// Driving the command-line interface in-process: write a sequence, then
// run the invariant table and a density grid over it.
//
// ```text
// cargo run --example cli_in_process
// ```

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("jbv-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let spec = dir.join("cosine.json");
    let spec = spec.to_str().ok_or("non-UTF-8 temp path")?;

    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut jbv = |args: &[&str]| {
        out.clear();
        err.clear();
        let code = jbv::cli::run(std::iter::once("jbv").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
    };

    let (code, meta, _) = jbv(&["construct", "thm16", "--lambda", "0.5", "--gamma", "0.4", "--out", spec]);
    println!("construct -> {code}\n{meta}");
    let (code, table, _) = jbv(&["verify", "--spec", spec, "--q", "1", "--N", "3", "--x", "0.1"]);
    println!("verify -> {code}\n{table}");
    let (code, csv, _) = jbv(&["density", "--spec", spec, "--q", "1", "--N", "10", "--grid=-1:1:5"]);
    println!("density -> {code}\n{csv}");
    let (code, _, msg) = jbv(&["bands", "--a", "1,1", "--b", "0"]);
    println!("bands with mismatched lists -> {code}: {msg}");

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
