from contextlib import contextmanager

import pytest

import src.tracing as tracing
from src.decomp import decompose, tower_hash
from src.models import CurveSpec, GroupSpec, KummerRoot, PoleTerm
from src.orchestrator import build_oracle_pipeline
from src.ramdata import from_artin_schreier


class RecordingSpan:
    def __init__(self, name, input, metadata):
        self.name = name
        self.input = input
        self.metadata = metadata
        self.updates = []
        self.trace_updates = []

    def update(self, **kwargs):
        self.updates.append(kwargs)

    def update_trace(self, **kwargs):
        self.trace_updates.append(kwargs)


class RecordingClient:
    def __init__(self):
        self.spans = []
        self.flushed = 0

    @contextmanager
    def start_as_current_span(self, name, input=None, metadata=None):
        span = RecordingSpan(name, input, metadata)
        self.spans.append(span)
        yield span

    def flush(self):
        self.flushed += 1


@pytest.fixture
def client(monkeypatch):
    recorder = RecordingClient()
    monkeypatch.setattr(tracing, "_langfuse", recorder)
    return recorder


def test_pipeline_opens_a_span_per_stage(client):
    spec = CurveSpec(
        group=GroupSpec(p=3, ell=1, n=2),
        b_roots=[KummerRoot(root=0, phi=1)],
        f_terms=[PoleTerm(root=0, order=1)],
    )
    build_oracle_pipeline().invoke({"spec": spec, "session_id": "run-1"})
    names = [span.name for span in client.spans]
    stages = ["oracle_places", "oracle_basis", "oracle_action", "oracle_jordan", "oracle_gaps", "oracle_compare"]
    assert [name for name in names if name in stages] == stages
    for span in client.spans:
        if span.name in stages:
            assert span.metadata["session_id"] == "run-1"
            assert span.trace_updates[0]["session_id"] == "run-1"
            assert "latency_ms" in span.updates[-1]["metadata"]


def test_engine_span_records_tower_and_summary(client):
    tower = from_artin_schreier(5, 3)
    decompose(tower)
    span = next(s for s in client.spans if s.name == "decompose")
    assert span.metadata["tower_id"] == tower_hash(tower)
    assert span.metadata["engine_name"] == "DecompositionEngine"
    assert span.trace_updates[0]["metadata"] == {"tower_id": tower_hash(tower)}
    assert {"metadata": {"summary": {"dimension": 4, "modules": 2}}} in span.updates


def test_errors_are_recorded_and_reraised(client):
    with pytest.raises(RuntimeError):
        with tracing.traced_operation("failing", {"x": 1}):
            raise RuntimeError("boom")
    span = client.spans[-1]
    assert span.updates[-1]["output"] == {"error": "boom"}
    assert span.updates[-1]["level"] == "ERROR"


def test_flush_reaches_client(client):
    tracing.flush_langfuse()
    assert client.flushed == 1


def test_without_client_spans_are_no_ops(monkeypatch):
    monkeypatch.setattr(tracing, "_langfuse", None)
    with tracing.traced_operation("quiet", {"x": 1}, tower_id="abc") as span:
        span.update(output={"ok": True})
    tracing.flush_langfuse()


def test_client_uses_configured_host(monkeypatch):
    created = {}

    def fake_langfuse(**kwargs):
        created.update(kwargs)
        return RecordingClient()

    monkeypatch.setenv("LANGFUSE_PUBLIC_KEY", "pk")
    monkeypatch.setenv("LANGFUSE_SECRET_KEY", "sk")
    monkeypatch.setattr(tracing, "Langfuse", fake_langfuse)
    assert isinstance(tracing._init_client(), RecordingClient)
    assert created == {"public_key": "pk", "secret_key": "sk", "host": tracing.LANGFUSE_BASE_URL}


def test_missing_keys_give_no_client(monkeypatch):
    monkeypatch.delenv("LANGFUSE_PUBLIC_KEY", raising=False)
    monkeypatch.delenv("LANGFUSE_SECRET_KEY", raising=False)
    assert tracing._init_client() is None
