"""Language-model provider abstraction with record/replay.

Requests are the canonical JSON body {model, temperature, messages}; their
SHA-256 hash keys the fixture store, so replay mode answers byte-identical
requests deterministically and without network access.  Record mode calls
the live endpoint and appends {request_hash, response_text} entries with
an atomic rewrite.  The API key is read from an environment variable and
never stored in fixtures.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from ..errors import ProviderError, ReplayMiss

DEFAULT_API_KEY_ENV = "TDTLAB_API_KEY"


class ProviderMode(str, Enum):
    LIVE = "Live"
    REPLAY = "Replay"
    RECORD = "Record"


@dataclass(frozen=True)
class ProviderConfig:
    endpoint: str = ""
    model: str = "gpt-3.5-turbo"
    temperature: float = 0.8
    mode: ProviderMode = ProviderMode.REPLAY
    fixture_path: str | None = None
    api_key_env: str = DEFAULT_API_KEY_ENV

    def __post_init__(self):
        if not 0 <= self.temperature <= 2:
            raise ValueError(f"temperature {self.temperature} outside [0, 2]")


def request_body(model: str, temperature: float, prompt: str) -> dict:
    return {
        "model": model,
        "temperature": temperature,
        "messages": [{"role": "user", "content": prompt}],
    }


def request_hash(body: dict) -> str:
    canonical = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class Provider:
    def __init__(self, config: ProviderConfig):
        self.config = config
        self._fixture: dict[str, str] | None = None

    def _load_fixture(self) -> dict[str, str]:
        if self._fixture is None:
            if not self.config.fixture_path:
                raise ProviderError(0, "no fixture path configured")
            path = Path(self.config.fixture_path)
            if path.exists():
                entries = json.loads(path.read_text(encoding="utf-8"))
            else:
                entries = []
            self._fixture = {e["request_hash"]: e["response_text"] for e in entries}
        return self._fixture

    def _append_fixture(self, rhash: str, response: str):
        path = Path(self.config.fixture_path)
        entries = []
        if path.exists():
            entries = json.loads(path.read_text(encoding="utf-8"))
        entries.append({"request_hash": rhash, "response_text": response})
        fd, tmp = tempfile.mkstemp(dir=path.parent or ".", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(entries, handle, indent=2)
            handle.write("\n")
        os.replace(tmp, path)
        self._fixture = None

    def _call_live(self, body: dict) -> str:
        import httpx

        key = os.environ.get(self.config.api_key_env, "")
        headers = {"Authorization": f"Bearer {key}"} if key else {}
        try:
            response = httpx.post(self.config.endpoint, json=body,
                                  headers=headers, timeout=60.0)
        except httpx.HTTPError as exc:
            raise ProviderError(0, str(exc)) from exc
        if response.status_code // 100 != 2:
            raise ProviderError(response.status_code, response.text)
        data = response.json()
        if isinstance(data, dict):
            if isinstance(data.get("content"), str):
                return data["content"]
            choices = data.get("choices")
            if choices:
                message = choices[0].get("message", {})
                if isinstance(message.get("content"), str):
                    return message["content"]
        raise ProviderError(response.status_code, "response carries no text content")

    def complete(self, prompt: str, temperature: float | None = None) -> str:
        temp = self.config.temperature if temperature is None else temperature
        body = request_body(self.config.model, temp, prompt)
        rhash = request_hash(body)
        if self.config.mode == ProviderMode.REPLAY:
            fixture = self._load_fixture()
            if rhash not in fixture:
                raise ReplayMiss(rhash)
            return fixture[rhash]
        text = self._call_live(body)
        if self.config.mode == ProviderMode.RECORD:
            self._append_fixture(rhash, text)
        return text


class StaticProvider(Provider):
    """In-memory provider for tests: maps exact prompts to responses."""

    def __init__(self, responses: dict[str, str], temperature: float = 0.8):
        super().__init__(ProviderConfig(mode=ProviderMode.REPLAY, fixture_path=None,
                                        temperature=temperature))
        self._responses = responses

    def complete(self, prompt: str, temperature: float | None = None) -> str:
        if prompt not in self._responses:
            raise ReplayMiss(request_hash(request_body("static", 0.0, prompt)))
        return self._responses[prompt]
