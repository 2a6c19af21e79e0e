"""Shared sink for acceptance results, printed in the terminal summary."""

# (criterion number, passed, detail)
ACCEPTANCE_LINES: list[tuple[int, bool, str]] = []


def record(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append((num, ok, detail))
