//! Reading a column of positive values, with rejected rows reported.

use std::io::Write;

use figdist::dataset::{detect_header, ingest_csv, Column};

fn main() -> figdist::Result<()> {
    let mut file = tempfile::NamedTempFile::new()?;
    writeln!(file, "id,strength\n1,7\n2,60\n3,0\n4,abc\n5,24\n6,-1")?;
    let column: Column = "strength".parse().unwrap();
    let header = detect_header(file.path(), &column)?;
    let got = ingest_csv(file.path(), &column, header)?;
    println!("header {header}, kept {:?}", got.dataset.values());
    for r in &got.rejects {
        println!("line {}: {:?} ({})", r.line, r.raw, r.reason);
    }
    Ok(())
}
