//! Acceptance criteria for the codec, run as a standalone harness.
//!
//! Prints one PASS/FAIL line per criterion and exits nonzero if any fail.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use fibq::codec::{decode_row, solve_row, trim_padding, EncodeError, RowError, DET_BOUND};
use fibq::integrity::{
    corrupt, decode_checked, detection_sweep, Corruption, Field, OutcomeKind, SweepMode,
};
use fibq::{decode, encode, normalize_text, q_power, CodedRow};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn row(d: i32, b1: i64, b2: i64, b4: i64) -> CodedRow {
    CodedRow::from_ints(d, b1, b2, b4).unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

/// Random strings of letters and spaces with lengths in 1..=200.
fn random_messages(seed: u64) -> impl Iterator<Item = String> {
    const CHARSET: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ abcdefghijklmnopqrstuvwxyz ";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || {
        let len = rng.gen_range(1..=200);
        (0..len)
            .map(|_| CHARSET[rng.gen_range(0..CHARSET.len())] as char)
            .collect()
    })
}

/// Independent table lookup: index of the character, shifted by `n`, mod 27.
fn oracle_value(ch: char, n: usize) -> usize {
    let index = match ch.to_ascii_uppercase() {
        ' ' | '0' => 26,
        c => (c as u8 - b'A') as usize,
    };
    (index + n) % 27
}

/// First block whose top-right cell values to zero, computed from the raw
/// text without the library's matrix code.
fn oracle_zero_pivot(text: &str) -> Option<usize> {
    let chars: Vec<char> = text.chars().collect();
    let mut m = 1;
    while 4 * m * m < chars.len() {
        m += 1;
    }
    let side = 2 * m;
    let n = if m * m <= 3 { 3 } else { m * m };
    let cell = |r: usize, c: usize| chars.get(r * side + c).copied().unwrap_or('0');
    (0..m * m).find(|&k| oracle_value(cell(2 * (k / m), 2 * (k % m) + 1), n) == 0)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let c = encode("NIHAL HELLO").map_err(|e| e.to_string())?;
    let expected = [
        row(-129, 17, 12, 3),
        row(44, 11, 4, 8),
        row(0, 15, 15, 3),
        row(45, 18, 3, 3),
    ];
    ensure!(c.rows() == expected, "rows {:?}", c.rows());
    ensure!(c.n() == 4, "n = {}", c.n());
    let d = decode(&c).map_err(|e| e.to_string())?;
    let values: Vec<u8> = d.values.cells().iter().map(|v| v.get()).collect();
    ensure!(
        values == [17, 12, 11, 4, 15, 3, 11, 8, 15, 15, 18, 3, 3, 3, 3, 3],
        "matrix {values:?}"
    );
    ensure!(d.text() == "NIHAL HELLO", "text {:?}", d.text());
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("exact match, {took:?}"))
}

fn criterion_2() -> Check {
    let c = encode("MATH").map_err(|e| e.to_string())?;
    ensure!(c.rows() == [row(84, 15, 3, 10)], "rows {:?}", c.rows());
    ensure!(c.n() == 3, "n = {}", c.n());
    let q = q_power(3).unwrap();
    let i = solve_row(&c.rows()[0], &q).map_err(|e| e.to_string())?;
    ensure!(i.e1 == BigInt::from(51), "e1 = {}", i.e1);
    ensure!(i.e2 == BigInt::from(33), "e2 = {}", i.e2);
    ensure!(i.x == BigRational::from_integer(22.into()), "x = {}", i.x);
    let text = decode(&c).map_err(|e| e.to_string())?.text();
    ensure!(text == "MATH", "text {text:?}");
    Ok("e1=51 e2=33 x=22".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for n in 1..=500u64 {
        let q = q_power(n).unwrap();
        let expected = if n % 2 == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        };
        ensure!(q.det() == expected, "det(Q^{n}) = {}", q.det());
    }
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("n=1..500, {took:?}"))
}

fn criterion_4() -> Check {
    let mut tested = 0;
    let mut skipped = 0;
    for msg in random_messages(0x5eed_0004) {
        if tested == 1000 {
            break;
        }
        let c = match encode(&msg) {
            Ok(c) => c,
            Err(EncodeError::ZeroPivot { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("{msg:?}: {e}")),
        };
        let expected = normalize_text(&msg).unwrap();
        let decoded = decode(&c).map_err(|e| format!("{msg:?}: {e}"))?;
        ensure!(
            decoded.message() == trim_padding(&expected),
            "round trip failed for {msg:?}"
        );
        tested += 1;
    }
    Ok(format!(
        "{tested} messages, 0 failures ({skipped} unencodable skipped)"
    ))
}

fn criterion_5() -> Check {
    let mut codewords = 0;
    let mut rows = 0;
    for msg in random_messages(0x5eed_0005) {
        if codewords == 200 {
            break;
        }
        let Ok(c) = encode(&msg) else { continue };
        let q = q_power(c.n()).unwrap();
        for (i, r) in c.rows().iter().enumerate() {
            let (b1, b2, b4) = (r.b1.get() as i32, r.b2.get() as i32, r.b4.get() as i32);
            let brute: Vec<i32> = (0..27).filter(|&x| b1 * b4 - b2 * x == r.d).collect();
            let got = decode_row(r, &q).map_err(|e| format!("{msg:?} row {i}: {e}"))?;
            ensure!(
                brute == [got.b3.get() as i32],
                "{msg:?} row {i}: brute force {brute:?}, decoder {}",
                got.b3
            );
            rows += 1;
        }
        codewords += 1;
    }
    Ok(format!("{codewords} codewords, {rows} rows, 0 mismatches"))
}

fn criterion_6() -> Check {
    let mut rows = 0;
    for n in [3u64, 4, 25] {
        let q = q_power(n).unwrap();
        for b1 in 0..27 {
            for b4 in 0..27 {
                for d in -DET_BOUND..=DET_BOUND {
                    let r = row(d, b1, 0, b4);
                    ensure!(
                        decode_row(&r, &q) == Err(RowError::Degenerate),
                        "row {r} under n={n} not degenerate"
                    );
                    rows += 1;
                }
            }
        }
    }

    let mut rejected = 0;
    let mut accepted = 0;
    for msg in random_messages(0x5eed_0006).take(3000) {
        match (oracle_zero_pivot(&msg), encode(&msg)) {
            (Some(k), Err(EncodeError::ZeroPivot { block, .. })) => {
                ensure!(block == k, "{msg:?}: reported block {block}, expected {k}");
                rejected += 1;
            }
            (None, Ok(_)) => accepted += 1,
            (expected, got) => return Err(format!("{msg:?}: oracle {expected:?}, encode {got:?}")),
        }
    }
    ensure!(
        rejected > 0 && accepted > 0,
        "sample did not exercise both paths"
    );
    Ok(format!(
        "{rows} degenerate rows; {rejected} rejections with correct block, {accepted} accepted"
    ))
}

fn criterion_7() -> Check {
    let c = encode("MATH").unwrap();
    let reference = normalize_text("MATH").unwrap();

    let start = Instant::now();
    let stats = detection_sweep(&c, "MATH", SweepMode::Exhaustive).map_err(|e| e.to_string())?;
    let took = within(start, Duration::from_secs(1))?;
    ensure!(
        stats.ok + stats.detected + stats.silent == stats.total,
        "partition broken: {stats:?}"
    );
    // 1352 alternative determinants + 3 * 26 alternative symbols
    ensure!(stats.total == 1430, "enumeration size {}", stats.total);
    let again = detection_sweep(&c, "MATH", SweepMode::Exhaustive).unwrap();
    ensure!(again == stats, "sweep not deterministic");

    let d85 = corrupt(&c, &[Corruption::new(0, Field::D, 85)]).unwrap();
    let kind = decode_checked(&d85, Some(&reference)).kind();
    ensure!(kind == OutcomeKind::Detected, "d=85 classified {kind}");
    let d87 = corrupt(&c, &[Corruption::new(0, Field::D, 87)]).unwrap();
    let kind = decode_checked(&d87, Some(&reference)).kind();
    ensure!(
        kind == OutcomeKind::SilentMiscorrection,
        "d=87 classified {kind}"
    );

    Ok(format!(
        "total={} detected={} silent={} fraction={:.4}, {took:?}",
        stats.total,
        stats.detected,
        stats.silent,
        stats.fraction()
    ))
}

fn run_fibq(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fibq"))
        .args(args)
        .output()
        .expect("run fibq")
}

fn criterion_8() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    for (name, text) in [("ex1", "NIHAL HELLO\n"), ("ex2", "MATH\n")] {
        let (src, code, back) = (
            path(&format!("{name}.txt")),
            path(&format!("{name}.fibq")),
            path(&format!("{name}.out")),
        );
        fs::write(&src, text).unwrap();
        let enc = run_fibq(&["encode", "--in", &src, "--out", &code]);
        ensure!(enc.status.success(), "encode {name} failed");
        let dec = run_fibq(&["decode", "--in", &code, "--out", &back]);
        ensure!(dec.status.success(), "decode {name} failed");
        ensure!(
            fs::read(&back).unwrap() == text.as_bytes(),
            "{name} not byte-exact"
        );
    }
    let ex2 = fs::read_to_string(path("ex2.fibq")).unwrap();
    ensure!(ex2 == "FIBQ1 b=1\n84 15 3 10\n", "MATH file body {ex2:?}");

    let malformed = [
        ("bad header", "FIBQ9 b=1\n84 15 3 10\n"),
        ("non-square", "FIBQ1 b=2\n84 15 3 10\n84 15 3 10\n"),
        ("d out of range", "FIBQ1 b=1\n999 15 3 10\n"),
        ("b1 out of range", "FIBQ1 b=1\n84 30 3 10\n"),
        ("count mismatch", "FIBQ1 b=4\n84 15 3 10\n"),
    ];
    let mut diagnostics = Vec::new();
    for (label, body) in malformed {
        let file = path("bad.fibq");
        fs::write(&file, body).unwrap();
        let out = run_fibq(&["decode", "--in", &file]);
        ensure!(!out.status.success(), "{label}: accepted");
        ensure!(out.stdout.is_empty(), "{label}: wrote output");
        let msg = String::from_utf8_lossy(&out.stderr).trim().to_string();
        ensure!(
            !diagnostics.contains(&msg),
            "{label}: diagnostic not distinct: {msg}"
        );
        diagnostics.push(msg);
    }
    Ok(format!(
        "2 byte-exact round trips, {} distinct diagnostics",
        diagnostics.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 golden vector NIHAL HELLO", criterion_1),
        ("2 golden vector MATH", criterion_2),
        ("3 Cassini identity n=1..500", criterion_3),
        ("4 round trip, 1000 random messages", criterion_4),
        ("5 brute-force oracle equivalence", criterion_5),
        ("6 degenerate rows and encode rejection", criterion_6),
        ("7 detection sweep on MATH", criterion_7),
        ("8 codeword file round trip", criterion_8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
