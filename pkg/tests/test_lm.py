import json
import math

import httpx
import pytest
from hypothesis import given, strategies as st

from phraselette.errors import (
    BackendUnavailableError,
    ContextTooLongError,
    MalformedResponseError,
    ValidationError,
)
from phraselette.lm import (
    InstructRequest,
    MockInstructBackend,
    MockLogitBackend,
    RemoteInstructBackend,
    RemoteLogitBackend,
    Token,
    detokenize,
    parse_items,
)

from conftest import CANNED, POEM_TRANSITIONS, POEM_VOCAB


@pytest.fixture
def mock():
    return MockLogitBackend(POEM_VOCAB, POEM_TRANSITIONS)


class TestTokenize:
    def test_empty(self, mock):
        assert mock.tokenize("") == []

    def test_three_tokens_with_whitespace(self):
        backend = MockLogitBackend(["plasticized", " ", "onto"], {"": {"0": 1.0}})
        tokens = backend.tokenize("plasticized onto")
        assert [t.surface for t in tokens] == ["plasticized", " ", "onto"]

    def test_unknown_spans_become_synthetic_tokens(self, mock):
        tokens = mock.tokenize("glazed beyond")
        assert detokenize(tokens) == "glazed beyond"
        assert tokens[-1].id >= len(POEM_VOCAB)

    @given(st.text(alphabet="gw edlaithz rvpc", max_size=40))
    def test_roundtrip(self, text):
        backend = MockLogitBackend(POEM_VOCAB, POEM_TRANSITIONS)
        assert detokenize(backend.tokenize(text)) == text


class TestNextDistribution:
    def test_configured_probability(self, mock):
        result = mock.next_distribution([])
        glazed = next(t for t in mock.vocab if t.surface == "glazed")
        assert result.distribution[glazed] == pytest.approx(math.log(0.5))

    def test_deterministic_chain_certainty(self):
        backend = MockLogitBackend(["a", "b"], {"": {"0": 1.0}, "0": {"1": 1.0}})
        a = backend.vocab[0]
        result = backend.next_distribution([a])
        assert result.distribution[backend.vocab[1]] == 0.0

    def test_full_vocab_exp_sums_to_one(self, mock):
        prefixes = [[], [mock.vocab[1]], [mock.vocab[1], mock.vocab[0]]]
        for prefix in prefixes:
            result = mock.next_distribution(prefix)
            assert len(result.distribution) == len(mock.vocab)
            total = sum(math.exp(lp) for lp in result.distribution.values()
                        if lp != float("-inf"))
            assert total == pytest.approx(1.0, abs=1e-6)

    def test_backoff_to_unconditional(self, mock):
        novel_prefix = [mock.vocab[4], mock.vocab[4], mock.vocab[4]]
        result = mock.next_distribution(novel_prefix)
        glazed = mock.vocab[1]
        assert result.distribution[glazed] == pytest.approx(math.log(0.5))

    def test_context_too_long(self):
        backend = MockLogitBackend(["a"], {"": {"0": 1.0}}, max_context=2)
        with pytest.raises(ContextTooLongError):
            backend.next_distribution([backend.vocab[0]] * 3)

    def test_rows_normalized_at_load(self):
        backend = MockLogitBackend(["a", "b"], {"": {"0": 2.0, "1": 6.0}})
        result = backend.next_distribution([])
        assert result.distribution[backend.vocab[0]] == pytest.approx(math.log(0.25))


class TestScoreSequence:
    def test_single_token(self):
        backend = MockLogitBackend(["a", "b"], {"": {"0": 0.25, "1": 0.75}})
        assert backend.score_sequence([backend.vocab[0]]) == pytest.approx(math.log(0.25))

    def test_matches_stepwise_oracle_exhaustively(self, mock):
        # Brute force: every <=3-token sequence scored step by step.
        for first in mock.vocab:
            for second in mock.vocab:
                for third in mock.vocab:
                    seq = [first, second, third]
                    expected = 0.0
                    for i, token in enumerate(seq):
                        dist = mock.next_distribution(seq[:i]).distribution
                        expected += dist[token]
                    assert mock.score_sequence(seq) == pytest.approx(expected, nan_ok=True) \
                        or (math.isinf(expected) and math.isinf(mock.score_sequence(seq)))

    def test_deterministic_chain_scores_zero(self):
        backend = MockLogitBackend(["a", "b"], {"": {"0": 1.0}, "0": {"1": 1.0}})
        assert backend.score_sequence(backend.vocab[:2]) == 0.0

    def test_additivity(self, mock):
        s1 = [mock.vocab[1]]
        s2 = [mock.vocab[0], mock.vocab[2]]
        whole = mock.score_sequence(s1 + s2)
        split = mock.score_sequence(s1) + mock.score_sequence(s2, context=s1)
        assert whole == pytest.approx(split)

    def test_empty_rejected(self, mock):
        with pytest.raises(ValidationError):
            mock.score_sequence([])


class TestMockInstruct:
    def test_canned_marker(self):
        backend = MockInstructBackend(canned=CANNED)
        items = backend.complete(InstructRequest(
            system_text="You are a precise scientific thesaurus, over the top.",
            user_text="Suggest alternatives", max_output_items=12))
        assert items[0] == "venusta amplitudo"

    def test_max_items_cap(self):
        backend = MockInstructBackend(canned=CANNED)
        items = backend.complete(InstructRequest(
            system_text="a precise scientific thesaurus", user_text="x",
            max_output_items=1))
        assert len(items) == 1

    def test_pure_function_of_request_and_seed(self):
        one = MockInstructBackend().complete(
            InstructRequest(system_text="s", user_text="u", max_output_items=9, seed=7))
        two = MockInstructBackend().complete(
            InstructRequest(system_text="s", user_text="u", max_output_items=9, seed=7))
        other_seed = MockInstructBackend().complete(
            InstructRequest(system_text="s", user_text="u", max_output_items=9, seed=8))
        assert one == two
        assert all(isinstance(i, str) and i for i in one)
        assert 1 <= len(one) <= 9
        assert one != other_seed  # overwhelmingly likely under different seeds

    def test_request_validation(self):
        with pytest.raises(ValidationError):
            InstructRequest(system_text="s", user_text="", max_output_items=3)
        with pytest.raises(ValidationError):
            InstructRequest(system_text="s", user_text="u", max_output_items=0)


class TestParseItems:
    def test_strips_markers_quotes_blanks(self):
        raw = '1. "gnarly look"\n\n- killer vibe\n  \n* sick style \n'
        assert parse_items(raw) == ["gnarly look", "killer vibe", "sick style"]

    def test_max_items(self):
        assert parse_items("a\nb\nc", max_items=2) == ["a", "b"]


def _transport(handler):
    return httpx.MockTransport(handler)


class TestRemoteLogit:
    def test_top_k_parsing_and_bounds(self):
        def handler(request):
            payload = json.loads(request.content)
            assert payload["prefix_tokens"] == [1, 0]
            return httpx.Response(200, json={"entries": [
                {"token": 2, "surface": "with", "logprob": -0.1},
                {"token": 4, "surface": "per", "logprob": -2.3},
            ]})

        backend = RemoteLogitBackend("http://lm", transport=_transport(handler))
        result = backend.next_distribution([Token(1, "glazed"), Token(0, " ")])
        assert all(lp <= 0 for lp in result.distribution.values())
        assert [t.id for t, _ in result.top()] == [2, 4]

    def test_retries_once_then_unavailable(self, monkeypatch):
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(500, text="down")

        monkeypatch.setattr("phraselette.lm.remote.RETRY_BACKOFF", 0.0)
        backend = RemoteLogitBackend("http://lm", transport=_transport(handler))
        with pytest.raises(BackendUnavailableError):
            backend.next_distribution([])
        assert len(calls) == 2

    def test_malformed_entries(self):
        def handler(request):
            return httpx.Response(200, json={"entries": [{"token": "x"}]})

        backend = RemoteLogitBackend("http://lm", transport=_transport(handler))
        with pytest.raises(MalformedResponseError):
            backend.next_distribution([])

    def test_score_needs_token_in_top_k(self):
        def handler(request):
            return httpx.Response(200, json={"entries": [
                {"token": 0, "surface": "a", "logprob": -0.5},
            ]})

        backend = RemoteLogitBackend("http://lm", transport=_transport(handler))
        with pytest.raises(MalformedResponseError):
            backend.score_sequence([Token(9, "z")])

    def test_tokenize_needs_vocab(self):
        backend = RemoteLogitBackend("http://lm", transport=_transport(lambda r: None))
        with pytest.raises(BackendUnavailableError):
            backend.tokenize("hello")
        with_vocab = RemoteLogitBackend(
            "http://lm", vocab=["glazed", " ", "with"],
            transport=_transport(lambda r: None))
        assert detokenize(with_vocab.tokenize("glazed with")) == "glazed with"


class TestRemoteInstruct:
    def test_items(self):
        def handler(request):
            payload = json.loads(request.content)
            assert payload["max_items"] == 3
            assert payload["seed"] == 11
            return httpx.Response(200, json={"items": [" one ", "", "two"]})

        backend = RemoteInstructBackend("http://lm", transport=_transport(handler))
        items = backend.complete(InstructRequest(
            system_text="s", user_text="u", max_output_items=3, seed=11))
        assert items == ["one", "two"]

    def test_empty_body_is_malformed(self):
        def handler(request):
            return httpx.Response(200, json={"items": []})

        backend = RemoteInstructBackend("http://lm", transport=_transport(handler))
        with pytest.raises(MalformedResponseError):
            backend.complete(InstructRequest(system_text="s", user_text="u"))
