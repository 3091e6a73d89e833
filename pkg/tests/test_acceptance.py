"""The nine acceptance criteria, one test each; each prints a PASS/FAIL line."""
import pytest

from orbitkit import acceptance


@pytest.mark.parametrize("k", range(1, len(acceptance.CRITERIA) + 1),
                         ids=[name for name, _ in acceptance.CRITERIA])
def test_criterion(k, capsys):
    res = acceptance.run_criterion(k)
    with capsys.disabled():
        print(f"\n{res.line()}")
        for d in res.details[:20]:
            print(f"    {d}")
    assert res.ok, res.details


def test_selftest_exit_codes(capsys, monkeypatch):
    import json

    from orbitkit.cli import main
    fast = [acceptance.CRITERIA[0], acceptance.CRITERIA[8]]
    monkeypatch.setattr(acceptance, "CRITERIA", fast)
    assert main(["selftest", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["ok"] and [c["number"] for c in obj["criteria"]] == [1, 2]

    def broken(c):
        c.eq("deliberate", 1, 2)

    monkeypatch.setattr(acceptance, "CRITERIA", fast + [("broken", broken)])
    assert main(["selftest"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] 3. broken" in out and "2/3 criteria pass" in out
