//! Factors, slices, concatenation and erasure of pictures.

use shapesym::symbol::symbols;
use shapesym::Picture;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Picture::from_rows(vec![symbols("a b c a b"), symbols("b a a b c")])?;
    println!("p has shape {:?}:\n{p}\n", p.shape());
    println!("factor from (1,0) to (3,1):\n{}\n", p.factor(&[1, 0], &[3, 1])?);
    println!("column 2:\n{}\n", p.slice(0, 2)?);
    let q = Picture::from_rows(vec![symbols("x"), symbols("y")])?;
    println!("p and q side by side:\n{}\n", p.concat(&q, 0)?);
    println!("transposed:\n{}\n", p.permute_axes(&[1, 0])?);
    println!("distinct 2x2 factors: {}", {
        let mut f = p.factors_of_shape(&[2, 2])?;
        f.sort_by_key(|x| x.cells().to_vec());
        f.dedup();
        f.len()
    });

    let e = shapesym::Symbol::new("e");
    let r = Picture::from_rows(vec![symbols("e a e"), symbols("e e e"), symbols("e b c")])?;
    let erased = r.erase(&e);
    println!("\nerasing e from\n{r}\ngives\n{erased}");
    println!("e-erasable: {}", r.is_erasable(&e));
    Ok(())
}
