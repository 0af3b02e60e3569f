fn main() {
    // lapack-sys only declares the FFI symbols; OpenBLAS provides them
    println!("cargo:rustc-link-lib=dylib=openblas");
}
