"""Interactive questionnaire that builds a :class:`Project` from typed answers."""

from __future__ import annotations

from typing import Callable, TextIO

from fpnfr.model import (
    CELLS,
    DEFAULT_PROFILE,
    DI_LEVELS,
    DI_MAX,
    DI_MIN,
    FunctionInventory,
    GscId,
    GscRatingSheet,
    NfrId,
    NfrRatingSheet,
    Project,
    cell_key,
)
from fpnfr.rubric import RubricTable, default_rubrics, suggest_nfr_di

ABORT_WORDS = {"abort", "quit", "q"}


class WizardAbort(Exception):
    """The user aborted, input ran out, or an answer kept failing validation."""


class _Asker:
    def __init__(self, stdin: TextIO, stdout: TextIO, max_retries: int):
        self.stdin = stdin
        self.stdout = stdout
        self.max_retries = max_retries

    def say(self, text: str = "") -> None:
        self.stdout.write(text + "\n")

    def ask_int(self, prompt: str, lo: int, hi: int | None, default: int | None = None) -> int:
        hint = f" [{default}]" if default is not None else ""
        for _ in range(self.max_retries + 1):
            self.stdout.write(f"{prompt}{hint}: ")
            self.stdout.flush()
            line = self.stdin.readline()
            if not line:
                raise WizardAbort("input ended before the questionnaire was complete")
            answer = line.strip()
            if answer.lower() in ABORT_WORDS:
                raise WizardAbort("aborted by user")
            if not answer and default is not None:
                return default
            try:
                value = int(answer)
            except ValueError:
                self.say(f"  not a whole number: {answer!r}")
                continue
            if value < lo or (hi is not None and value > hi):
                bound = f"{lo}..{hi}" if hi is not None else f">= {lo}"
                self.say(f"  out of range {bound}: {value}")
                continue
            return value
        raise WizardAbort(f"too many invalid answers for {prompt!r}")


def run_wizard(
    stdin: TextIO,
    stdout: TextIO,
    rubrics: RubricTable | None = None,
    *,
    name: str = "untitled",
    weight_profile: str = DEFAULT_PROFILE,
    max_retries: int = 3,
    suggest: Callable[[NfrId, GscRatingSheet], int] = suggest_nfr_di,
) -> Project:
    """Ask for the 15 inventory counts, 14 GSC ratings and 7 NFR ratings.

    NFRs with a rubric show all six guideline rows first; the others offer
    the mean of their mapped GSC ratings as the default answer. Typing
    ``abort`` at any prompt raises :class:`WizardAbort`.
    """
    rubrics = rubrics or default_rubrics()
    ask = _Asker(stdin, stdout, max_retries)

    ask.say("Function inventory (number of functions per type and complexity; blank = 0)")
    counts = {cell: ask.ask_int(f"  {cell_key(cell)}", 0, None, default=0) for cell in CELLS}

    ask.say()
    ask.say(f"General system characteristics (degree of influence {DI_MIN}-{DI_MAX})")
    gsc = GscRatingSheet(
        {g: ask.ask_int(f"  GSC-{g.ordinal} {g.value}", DI_MIN, DI_MAX) for g in GscId}
    )

    ask.say()
    ask.say(f"Non-functional requirements (degree of influence {DI_MIN}-{DI_MAX})")
    nfr = {}
    for n in NfrId:
        if rubrics.has_rubric(n):
            ask.say(f"  {n.label}:")
            for di in DI_LEVELS:
                ask.say(f"    {di}: {rubrics.entry(n, di).display()}")
            nfr[n] = ask.ask_int(f"  {n.value}", DI_MIN, DI_MAX)
        else:
            suggested = suggest(n, gsc)
            ask.say(f"  {n.label}: no rubric; default is the mean of its mapped GSC ratings")
            nfr[n] = ask.ask_int(f"  {n.value}", DI_MIN, DI_MAX, default=suggested)

    return Project(
        name=name,
        inventory=FunctionInventory(counts),
        gsc=gsc,
        nfr=NfrRatingSheet(nfr),
        weight_profile_name=weight_profile,
    )
