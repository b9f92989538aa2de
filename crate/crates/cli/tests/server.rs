use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use axum::Router;
use clusterlab_cli::server::{router_with, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    let v = serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, v)
}

fn app() -> Router {
    router_with(AppState::default())
}

fn a2_seed() -> String {
    json!({
        "m": 2, "n": 2, "B": [[0, 1], [-1, 0]], "labels": ["x1", "x2"],
        "variables": [[{"exp": [1, 0], "num": 1, "den": 1}], [{"exp": [0, 1], "num": 1, "den": 1}]],
        "history": []
    })
    .to_string()
}

#[tokio::test]
async fn health() {
    let (s, v) = call(&app(), "GET", "/health", None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v, json!("ok"));
}

#[tokio::test]
async fn bruhat_build_opens_a_session() {
    let app = app();
    let (s, v) = call(&app, "POST", "/bruhat/build", Some(r#"{"word":"1,2,1,-1,-2,-1","rank":2}"#)).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["seed"]["n"], json!(8));
    assert_eq!(v["seed"]["labels"].as_array().unwrap().len(), 8);
    let id = v["id"].as_str().unwrap();
    let (s, strata) = call(&app, "GET", &format!("/session/{id}/strata"), None).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(strata["quantum"].as_array().unwrap().len(), 256);

    let (s, _) = call(&app, "POST", "/bruhat/build", Some(r#"{"word":"1,1","rank":2}"#)).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, v) = call(&app, "POST", "/bruhat/build", Some(r#"{"word":"","rank":2}"#)).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["seed"]["m"], json!(0));
}

#[tokio::test]
async fn mutate_twice_is_identity_and_undo_restores() {
    let app = app();
    let (s, v) = call(&app, "POST", "/bruhat/build", Some(r#"{"word":"1,2,1,-1,-2,-1","rank":2}"#)).await;
    assert_eq!(s, StatusCode::OK);
    let id = v["id"].as_str().unwrap().to_string();
    let start = v["seed"].clone();
    let mutate = format!("/session/{id}/mutate");
    let (_, once) = call(&app, "POST", &mutate, Some(r#"{"k":1}"#)).await;
    assert_ne!(once, start);
    let (s, twice) = call(&app, "POST", &mutate, Some(r#"{"k":1}"#)).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(twice, start);

    let (_, third) = call(&app, "POST", &mutate, Some(r#"{"k":3}"#)).await;
    let (_, cur) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(cur, third);
    let undo = format!("/session/{id}/undo");
    let expected = [start.clone(), once.clone(), start.clone()];
    for want in expected {
        let (s, got) = call(&app, "POST", &undo, None).await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!(got, want);
    }
    let (s, _) = call(&app, "POST", &undo, None).await;
    assert_eq!(s, StatusCode::CONFLICT);
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let (s, v) = call(&app, "POST", "/session", Some(&a2_seed())).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    let id = v["id"].as_str().unwrap().to_string();
    let mutate = format!("/session/{id}/mutate");
    assert_eq!(call(&app, "POST", &mutate, Some(r#"{"k":7}"#)).await.0, StatusCode::CONFLICT);
    assert_eq!(call(&app, "POST", &mutate, Some(r#"{"k":0}"#)).await.0, StatusCode::CONFLICT);
    assert_eq!(call(&app, "POST", &mutate, Some("{not json")).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(call(&app, "POST", &mutate, Some(r#"{"j":1}"#)).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(call(&app, "POST", "/session", Some("[1,2")).await.0, StatusCode::BAD_REQUEST);
    let missing = "/session/00000000-0000-0000-0000-000000000000";
    assert_eq!(call(&app, "GET", missing, None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "GET", "/session/not-a-uuid", None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(
        call(&app, "POST", &format!("{missing}/mutate"), Some(r#"{"k":1}"#)).await.0,
        StatusCode::NOT_FOUND
    );
}

#[tokio::test]
async fn quantum_session_from_pair() {
    let app = app();
    let pair = r#"{"B":[[0,1],[-1,0]],"lambda":[[0,-1],[1,0]]}"#;
    let (s, v) = call(&app, "POST", "/session", Some(pair)).await;
    assert_eq!(s, StatusCode::OK, "{v}");
    assert!(v["seed"]["qvariables"].is_array());
    let id = v["id"].as_str().unwrap().to_string();
    let (s, m) = call(&app, "POST", &format!("/session/{id}/mutate"), Some(r#"{"k":2}"#)).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(m["history"], json!([2]));
    let (_, strata) = call(&app, "GET", &format!("/session/{id}/strata"), None).await;
    let ranks: Vec<i64> = strata["quantum"].as_array().unwrap().iter().map(|d| d["rank"].as_i64().unwrap()).collect();
    assert_eq!(ranks, vec![0, 1, 1, 0]);

    // a quantum seed JSON opens a session too
    let (s, _) = call(&app, "POST", "/session", Some(&m.to_string())).await;
    assert_eq!(s, StatusCode::OK);
}

#[tokio::test]
async fn classical_session_with_lambda() {
    let app = app();
    let mut seed: Value = serde_json::from_str(&a2_seed()).unwrap();
    seed["lambda"] = json!([[0, 1], [-1, 0]]);
    let (s, v) = call(&app, "POST", "/session", Some(&seed.to_string())).await;
    assert_eq!(s, StatusCode::OK);
    let id = v["id"].as_str().unwrap();
    let (_, strata) = call(&app, "GET", &format!("/session/{id}/strata"), None).await;
    let ranks: Vec<i64> = strata["classical"].as_array().unwrap().iter().map(|d| d["rank"].as_i64().unwrap()).collect();
    assert_eq!(ranks, vec![0, 1, 1, 0]);
}
