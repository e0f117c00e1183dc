use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

use crate::document::{EngineError, ValidationReport};
use crate::ontology::OntologyError;
use crate::persistence::PersistError;
use crate::profile::ProfileError;

/// Failure of a request, rendered as `{"error": name, ...}`.
#[derive(Debug)]
pub enum ApiError {
    /// 400: body or query did not match the expected shape.
    BadRequest(String),
    /// 404: unknown document, profile, ontology, tier, slot or annotation.
    NotFound { error: &'static str, id: String },
    /// 409: the request named a revision other than the current one.
    Conflict { current: u64 },
    /// 422: the edit or input violates a domain rule.
    Domain { error: &'static str, message: String },
    /// 422: the edit would leave the document invalid.
    Invalid(ValidationReport),
}

impl ApiError {
    pub fn not_found(error: &'static str, id: impl Into<String>) -> Self {
        ApiError::NotFound { error, id: id.into() }
    }

    pub fn domain(error: &'static str, message: impl Into<String>) -> Self {
        ApiError::Domain {
            error,
            message: message.into(),
        }
    }
}

impl From<EngineError> for ApiError {
    fn from(e: EngineError) -> Self {
        if e.is_not_found() {
            ApiError::NotFound {
                error: e.name(),
                id: e.to_string(),
            }
        } else {
            ApiError::domain(e.name(), e.to_string())
        }
    }
}

impl From<PersistError> for ApiError {
    fn from(e: PersistError) -> Self {
        match e {
            PersistError::InvalidDocument(report) => ApiError::Invalid(report),
            e => ApiError::domain(e.name(), e.to_string()),
        }
    }
}

impl From<ProfileError> for ApiError {
    fn from(e: ProfileError) -> Self {
        ApiError::domain(e.name(), e.to_string())
    }
}

impl From<OntologyError> for ApiError {
    fn from(e: OntologyError) -> Self {
        ApiError::domain(e.name(), e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::BadRequest(message) => (
                StatusCode::BAD_REQUEST,
                json!({"error": "MalformedRequest", "message": message}),
            ),
            ApiError::NotFound { error, id } => (StatusCode::NOT_FOUND, json!({"error": error, "message": id})),
            ApiError::Conflict { current } => (
                StatusCode::CONFLICT,
                json!({"error": "RevisionConflict", "revision": current}),
            ),
            ApiError::Domain { error, message } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({"error": error, "message": message}),
            ),
            ApiError::Invalid(report) => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({"error": "InvalidDocument", "issues": report.issues}),
            ),
        };
        (status, Json(body)).into_response()
    }
}
