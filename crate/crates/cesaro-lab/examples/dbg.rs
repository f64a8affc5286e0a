use cesaro_lab::lab::{builtin_suite, run_scenario};
fn main() {
    let t0 = std::time::Instant::now();
    let mut fails = 0;
    for cfg in builtin_suite() {
        match run_scenario(&cfg) {
            Ok(rep) => {
                let status = if rep.pass { "PASS" } else { "FAIL" };
                if !rep.pass { fails += 1; }
                print!("{status} {:28}", rep.name);
                for v in &rep.verdicts {
                    print!("  [{} {:?} {:+.3}]", v.name, v.verdict, v.slope);
                }
                println!();
            }
            Err(e) => { fails += 1; println!("ERROR {}: {e}", cfg.label()); }
        }
    }
    println!("total {:.1}s, {} failures", t0.elapsed().as_secs_f64(), fails);
}
