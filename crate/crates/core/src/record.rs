//! JSON helpers that keep the offending field path in error messages.

use serde::de::DeserializeOwned;

use crate::error::Error;

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, Error> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Record {
            path: if path.is_empty() { ".".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })
}

pub fn field_error(path: &str, message: &str) -> Error {
    Error::Record {
        path: path.to_string(),
        message: message.to_string(),
    }
}
