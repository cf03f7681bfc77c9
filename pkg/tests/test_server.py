import asyncio

import pytest

pytest.importorskip("mcp")

from sncover import server  # noqa: E402
from sncover.certificates import serialize  # noqa: E402
from sncover.lemmas import lemma_hookidempotent  # noqa: E402


def test_registered_tools():
    tools = asyncio.run(server.mcp.list_tools())
    assert {t.name for t in tools} == {
        "dimension", "kronecker", "tensor_support", "saxl_check", "min_cover_power", "verify_certificate_text",
    }


def test_tools_called_directly():
    assert server.dimension_of("[3,2,1]") == 16
    assert server.kronecker("[3,2,1]", "[3,2,1]", "[3,2,1]") == 5
    assert server.tensor_support("[2,1]", "[2,1]") == ["[3]", "[2,1]", "[1,1,1]"]
    assert server.saxl_check("[3,2,1]") is True
    assert server.min_cover_power("[2,2]", 10)["status"] == "never"


def test_verify_certificate_text():
    report = server.verify_certificate_text(serialize(lemma_hookidempotent(3, 2)), "full")
    assert report["passed"] is True
    broken = server.verify_certificate_text("{not json")
    assert broken["passed"] is False
    assert "error" in broken


def test_partition_resource():
    text = server.describe_partition("2,1")
    assert "dimension 2" in text
    assert "conjugate [2,1]" in text
    assert "hook lengths [[3, 1], [1]]" in text
