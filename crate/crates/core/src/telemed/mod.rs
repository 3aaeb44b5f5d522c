//! Patient-to-doctor exchange of measurement records.
//!
//! Records live in plaintext in the patient's local store. For transfer they
//! are encrypted with a per-pair symmetric session key, the ciphertext and
//! header are hashed and signed with the sender's RSA key, and the session
//! key itself travels wrapped under the receiver's RSA key.

pub mod frame;
pub mod record;
pub mod session;

pub use frame::{decode_frame, decode_frame_prefix, decode_frame_stream, encode_frame, SealedEnvelope};
pub use record::{DecimalValue, PatientId, PatientRecord, RecordStore};
pub use session::{start_session, Role, Session, DEFAULT_ROTATION_PERIOD};
