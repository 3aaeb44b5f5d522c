//! Block ciphers (DES, 3DES, AES, Blowfish), textbook RSA and RSA signatures,
//! composed into a hybrid protocol for moving patient measurement records
//! from a home network to a remote doctor.
//!
//! Everything here is written from the public algorithm definitions for
//! study and demonstration. None of it is constant time, and the RSA layer
//! uses no padding scheme.

pub mod aes;
pub mod bench;
pub mod blowfish;
pub mod cipher;
pub mod des;
pub mod digsig;
mod error;
pub mod rsa;
pub mod telemed;

pub use cipher::{BlockCipher, BlockCipherSuite, BlockKey, Cipher, InitializationVector, Mode};
pub use error::{Error, Result};
