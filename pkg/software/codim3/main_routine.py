"""The sampling loop: generate, validate, classify and record `count` ideals.

Progress is reported with the banners below, printed and, with the `logging` option, appended to
log.txt next to the data folder:

    Main Routine started at 2026-01-01 12:00:00 with options:
    new OptionTable from {maxTries => 10, degSeq => (0), ...}
    Checking in every 100 ideals... done 100 so far
    Main Routine finished:
    at 2026-01-01 12:03:20
    ran for 200 seconds,
    classified 997 ideals,
    generated 41 distinct classes,
    discovered 3 new classes
"""

import concurrent.futures
import logging
import os
import time
from dataclasses import dataclass, field as dataclass_field
from datetime import datetime
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from configuration import ConfigSettings
from datastore import (
    HUMAN_INDEX,
    MACHINE_INDEX,
    ClassKey,
    bucket_for,
    load_database,
    record_classification,
)
from errors import InternalInvariantError, UnclassifiableError
from fields import FieldSpec
from file_utils import append_text, read_lines
from groebner import minimal_generators, socle_dimension
from polynomials import HomogeneousPolynomial, Ideal, parse_matrix
from sampler import VALIDATION_FAILED, IdealSampler, validate_ideal
from sampler_config import OPTION_ORDER
from tor import TorProfile, classify, compute_invariants, tor_algebra

log = logging.getLogger(__name__)

LOG_FILE = "log.txt"
TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M:%S"

# Iterations per task; a worker stream is resumed chunk by chunk from its saved sampler state
CHUNK_SIZE = 16
PoolExecutor = concurrent.futures.ProcessPoolExecutor


def timestamp(when: datetime = None) -> str:
    return (when or datetime.now()).strftime(TIMESTAMP_FORMAT)


def _format_option(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(str(v) for v in value) + ")"
    return str(value)


def option_table(cfg) -> str:
    """The options in Macaulay2's OptionTable notation, in the order of the original routine"""
    body = ", ".join(f"{name} => {_format_option(cfg[name])}" for name in OPTION_ORDER)
    return f"new OptionTable from {{{body}}}"


class Messenger:
    """Prints banners and, if enabled, appends them to log.txt

    @param root  The directory holding log.txt
    @param enabled  Whether to write log.txt at all
    @param out  Where printed lines go
    """

    def __init__(self, root: str = ".", enabled: bool = False, out=print):
        self.path = os.path.join(root, LOG_FILE)
        self.enabled = enabled
        self.out = out

    def say(self, *lines):
        for line in lines:
            self.out(line)
        if self.enabled:
            append_text(self.path, "".join(line + "\n" for line in lines))


@dataclass
class RunSummary:
    started: datetime
    finished: Optional[datetime] = None
    elapsed: float = 0.0
    classified: int = 0
    distinct: List[ClassKey] = dataclass_field(default_factory=list)
    new: List[ClassKey] = dataclass_field(default_factory=list)
    failures: Dict[str, int] = dataclass_field(default_factory=dict)

    def banner(self) -> List[str]:
        return [
            "Main Routine finished:",
            f"at {timestamp(self.finished)}",
            f"ran for {round(self.elapsed)} seconds,",
            f"classified {self.classified} ideals,",
            f"generated {len(self.distinct)} distinct classes,",
            f"discovered {len(self.new)} new classes",
        ]


class IterationResult(NamedTuple):
    """What one iteration produced; generators and profile are None unless it was classified"""

    index: int
    failure_reason: Optional[str] = None
    generators: Optional[Tuple[HomogeneousPolynomial, ...]] = None
    profile: Optional[TorProfile] = None
    bucket: int = 0


def classify_generators(gens) -> TorProfile:
    """Classify a minimal generating set and check m and n against the direct computations

    @exception InternalInvariantError if the Tor algebra disagrees with the generator count or type
    """
    ideal = Ideal(gens[0].field, tuple(gens))
    A = tor_algebra(ideal)
    profile = classify(*compute_invariants(A), A)
    n = socle_dimension(A.complex.presentation)
    if profile.m != len(gens) or profile.n != n:
        raise InternalInvariantError(
            f"{ideal.to_text()}: Tor gives (m,n) = ({profile.m},{profile.n}) but the ideal has "
            f"{len(gens)} minimal generators and type {n}"
        )
    return profile


def process_iteration(index: int, sampler: IdealSampler, cfg) -> IterationResult:
    outcome = sampler.next_ideal()
    if not outcome.ok:
        return IterationResult(index, outcome.failure_reason)
    validation = validate_ideal(outcome.ideal, cfg)
    if not validation.is_valid:
        log.debug(f"iteration {index}: not classified, {validation.message}")
        return IterationResult(index, VALIDATION_FAILED)
    gens = tuple(minimal_generators(outcome.ideal))
    profile = classify_generators(gens)
    return IterationResult(index, None, gens, profile, bucket_for(gens, cfg.numTerms))


def stream_start(seed: int, worker: int):
    """The sampler state a worker stream starts from: its generator state and zero tries"""
    return np.random.default_rng([seed, worker]).bit_generator.state, 0


def run_chunk(cfg_values: dict, state, indices: List[int]):
    """Iterations `indices` of one worker stream, resumed from `state`

    @return  (results, the state to resume the stream from)
    """
    cfg = ConfigSettings(cfg_values)
    rng_state, num_tries = state
    rng = np.random.default_rng()
    rng.bit_generator.state = rng_state
    sampler = IdealSampler(cfg, rng)
    sampler.num_tries = num_tries
    results = [process_iteration(i, sampler, cfg) for i in indices]
    return results, (rng.bit_generator.state, sampler.num_tries)


def _parallel_results(cfg, seed: int, workers: int, count: int):
    """Results of iteration i on worker i mod workers, yielded in iteration order as they arrive

    At most one chunk per worker is in flight, and no chunk is started more than `window`
    iterations ahead of the next result to yield, which bounds the reorder buffer.
    """
    values = cfg.as_dict()
    streams = {w: list(range(w, count, workers)) for w in range(workers)}
    states = {w: stream_start(seed, w) for w in range(workers)}
    position = dict.fromkeys(streams, 0)
    window = 2 * CHUNK_SIZE * workers
    buffer = {}
    next_index = 0
    with PoolExecutor(max_workers=workers) as executor:
        running = {}
        while next_index < count:
            busy = set(running.values())
            for w in streams:
                indices = streams[w][position[w] : position[w] + CHUNK_SIZE]
                if w in busy or not indices or indices[0] >= next_index + window:
                    continue
                running[executor.submit(run_chunk, values, states[w], indices)] = w
                position[w] += len(indices)
            done, _ = concurrent.futures.wait(
                running, return_when=concurrent.futures.FIRST_COMPLETED
            )
            for task in done:
                w = running.pop(task)
                results, states[w] = task.result()
                buffer.update((r.index, r) for r in results)
            while next_index in buffer:
                yield buffer.pop(next_index)
                next_index += 1


def _results(cfg, seed: int, workers: int, count: int):
    """Iteration results in iteration order"""
    if workers > 1:
        yield from _parallel_results(cfg, seed, workers, count)
        return
    sampler = IdealSampler(cfg, np.random.default_rng([seed, 0]))
    for i in range(count):
        yield process_iteration(i, sampler, cfg)


def make_seed() -> int:
    """A seed from the clock, for runs without an explicit one"""
    return int(10**6 * time.time()) % 2**32


def main_routine(
    count: int, cfg, root: str = ".", seed: int = None, workers: int = 1, out=print
) -> RunSummary:
    """Sample, classify and record `count` ideals into the data folder under root

    Iterations that produce the zero ideal or fail validation still count towards `count`.

    @param cfg  The sampling configuration (ConfigSettings)
    @param seed  Seed of the random streams; drawn from the clock if None
    @param workers  Number of processes; iteration i runs on worker i mod workers

    @exception OSError if the data folder or log.txt cannot be written
    @exception InternalInvariantError if a classification contradicts itself
    """
    if count < 0:
        raise ValueError(f"Iteration count {count} is negative")
    if workers < 1:
        raise ValueError(f"Need at least one worker, got {workers}")
    if seed is None:
        seed = make_seed()
    log.info(f"seed {seed}, {workers} worker(s)")

    field = FieldSpec(cfg.fieldChar)
    log.info(f"sampling over {field.name}")
    db = load_database(root)
    messenger = Messenger(root, cfg.logging, out)

    summary = RunSummary(started=datetime.now())
    clock = time.monotonic()
    messenger.say(f"Main Routine started at {timestamp(summary.started)} with options:")
    messenger.say(option_table(cfg))

    distinct = set()
    for result in _results(cfg, seed, workers, count):
        i = result.index
        if cfg.checkIn > 0 and i > 0 and i % cfg.checkIn == 0:
            messenger.say(f"Checking in every {cfg.checkIn} ideals... done {i} so far")
        if result.profile is None:
            reason = result.failure_reason
            summary.failures[reason] = summary.failures.get(reason, 0) + 1
            continue
        key = ClassKey.from_profile(result.profile)
        recorded = record_classification(db, key, result.generators, result.bucket)
        summary.classified += 1
        if key not in distinct:
            distinct.add(key)
            summary.distinct.append(key)
        if recorded.new_class:
            summary.new.append(key)

    summary.finished = datetime.now()
    summary.elapsed = time.monotonic() - clock
    messenger.say(*summary.banner())
    return summary


class LineClassification(NamedTuple):
    """The outcome for one line of a generator file

    @param profile  None if the line could not be classified
    @param error  Why not
    @param mismatch  True if the profile differs from the file name or the first line of the file
    """

    line_number: int
    text: str
    profile: Optional[TorProfile] = None
    error: Optional[str] = None
    mismatch: bool = False


def classify_file(path: str, field: FieldSpec = None) -> List[LineClassification]:
    """Classify every `matrix{{...}}` line of a file

    Lines that fail to parse or classify are reported and skipped. For files named
    m-n-Class-p-q-r.txt every profile is compared with the name.

    @exception OSError if the file cannot be read
    """
    field = field or FieldSpec(3)
    expected = ClassKey.from_stem(os.path.splitext(os.path.basename(path))[0])
    results = []
    for number, line in enumerate(read_lines(path), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            gens = minimal_generators(Ideal(field, tuple(parse_matrix(text, field))))
            if not gens:
                raise ValueError("zero ideal")
            profile = classify_generators(gens)
        except (ValueError, UnclassifiableError) as e:
            log.warning(f"{path}:{number}: {e}")
            results.append(LineClassification(number, text, error=str(e)))
            continue
        if expected is None:
            expected = ClassKey.from_profile(profile)
            mismatch = False
        else:
            mismatch = ClassKey.from_profile(profile) != expected
        results.append(LineClassification(number, text, profile, mismatch=mismatch))
    return results


def classify_path(path: str, field: FieldSpec = None) -> Dict[str, List[LineClassification]]:
    """`classify_file` on a file, or on every .txt file below a directory"""
    if not os.path.isdir(path):
        return {path: classify_file(path, field)}
    results = {}
    for folder, _, files in sorted(os.walk(path)):
        for name in sorted(files):
            if name.endswith(".txt") and name not in (MACHINE_INDEX, HUMAN_INDEX, LOG_FILE):
                filename = os.path.join(folder, name)
                results[filename] = classify_file(filename, field)
    return results
