//! Assemble a program with macros, expand it, encode it as a set and decode it back.
use srm::asm::{assemble, decode_program, disassemble_program, encode_program, expand_macros};

const SRC: &str = "\
# R0 := R0 ∪ R1
1: JEZ 1 6
2: TAKE 1 2
3: REMOVE 2 1
4: ADD 2 0
5: GOTO 1
";

fn main() {
    let mp = assemble(SRC).unwrap();
    let p = expand_macros(&mp);
    print!("{}", disassemble_program(&p));
    let code = encode_program(&p);
    println!("code rank {}", code.rank());
    assert_eq!(decode_program(&code).unwrap(), p);
    println!("decoded program matches");
}
