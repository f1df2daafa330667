//! Designs a rate-1/2 code of length 1024 and writes its specification
//! file next to the system temp directory.

use polar_ga::construction::{
    estimate_bler, read_code_spec, reliabilities, select_info_set, write_code_spec, DesignSnr, Method,
};

fn main() -> polar_ga::Result<()> {
    let snr = DesignSnr::from_db(0.0)?;
    let rel = reliabilities(10, snr, Method::IMPROVED)?;
    let code = select_info_set(&rel, 512)?;
    println!("N={} K={} rate={}", code.len(), code.k(), code.rate());
    println!("first information positions: {:?}", &code.info_set()[..8]);
    println!(
        "estimated BLER at design SNR: {:.3e}",
        estimate_bler(&code, &rel)?.value
    );

    let path = std::env::temp_dir().join("polar_ga_example_code.json");
    write_code_spec(&path, &code)?;
    assert_eq!(read_code_spec(&path)?, code);
    println!("wrote {}", path.display());
    Ok(())
}
