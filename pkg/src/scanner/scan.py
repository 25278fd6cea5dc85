from __future__ import absolute_import, annotations

import csv
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Dict, List, Optional, Tuple

from common.errors import CheckpointError, ConfigurationError, ResourceCapError
from interval.enclosure import Enclosure
from rangecert.certificate import Certificate, CertificateCheck
from scanner.blocks import count_block
from scanner.config import ScanConfig


logger = logging.getLogger("singular.scanner.scan")


class BlockSummary:
    """
    The outcome of one counted block.

    Attributes:
        - x_lo, x_hi: the block, both ends included
        - bound: the largest counter of the block
        - saturated: whether a counter of the block reached the ceiling, the true maximum is then >= bound
    """

    def __init__(self, x_lo: int, x_hi: int, bound: int, saturated: bool) -> None:
        self.x_lo = x_lo
        self.x_hi = x_hi
        self.bound = bound
        self.saturated = saturated

    def to_repr(self) -> dict:
        return {
            "xLo": self.x_lo,
            "xHi": self.x_hi,
            "max": self.bound,
            "saturated": self.saturated,
        }

    @staticmethod
    def from_repr(raw: dict) -> BlockSummary:
        return BlockSummary(raw["xLo"], raw["xHi"], raw["max"], raw["saturated"])

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, BlockSummary):
            return False
        return o.to_repr() == self.to_repr()

    def __repr__(self) -> str:
        return f"BlockSummary([{self.x_lo}, {self.x_hi}], max={self.bound})"


class ScanReport:
    """
    The merged outcome of a scan: C_eps(delta) <= global_bound for every -x_max <= delta <= -x_min covered by the
    blocks, unless some block saturated.
    """

    def __init__(self, config: ScanConfig, blocks: List[BlockSummary], runtime_ms: int = 0) -> None:
        self.config = config
        self.blocks = sorted(blocks, key=lambda block: block.x_lo)
        self.runtime_ms = runtime_ms

    @property
    def global_bound(self) -> int:
        return max((block.bound for block in self.blocks), default=0)

    @property
    def per_block_max(self) -> List[int]:
        return [block.bound for block in self.blocks]

    @property
    def blocks_processed(self) -> int:
        return len(self.blocks)

    @property
    def saturated(self) -> bool:
        return any(block.saturated for block in self.blocks)

    @property
    def complete(self) -> bool:
        """Whether the blocks cover [x_min, x_max] without gaps."""
        expected = self.config.x_min
        for block in self.blocks:
            if block.x_lo != expected:
                return False
            expected = block.x_hi + 1
        return expected == self.config.x_max + 1

    def ensure_unsaturated(self) -> None:
        if self.saturated:
            blocks = [f"[{block.x_lo}, {block.x_hi}]" for block in self.blocks if block.saturated]
            raise ResourceCapError(f"Counters saturated in blocks {', '.join(blocks)}, the bound is not valid")

    def to_repr(self) -> dict:
        return {
            "config": self.config.to_repr(),
            "globalBound": self.global_bound,
            "blocks": [block.to_repr() for block in self.blocks],
            "blocksProcessed": self.blocks_processed,
            "saturated": self.saturated,
            "runtimeMs": self.runtime_ms,
        }

    @staticmethod
    def from_repr(raw: dict) -> ScanReport:
        return ScanReport(
            ScanConfig.from_repr(raw["config"]),
            [BlockSummary.from_repr(block) for block in raw["blocks"]],
            raw.get("runtimeMs", 0)
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, ScanReport):
            return False
        return o.config == self.config and o.blocks == self.blocks

    def __repr__(self) -> str:
        return f"ScanReport({self.config!r}, bound={self.global_bound}, blocks={self.blocks_processed})"


def plan_blocks(config: ScanConfig) -> List[Tuple[int, int]]:
    return [(x_lo, min(x_lo + config.block_size - 1, config.x_max))
            for x_lo in range(config.x_min, config.x_max + 1, config.block_size)]


def _scan_block(x_lo: int, x_hi: int, raw_config: dict) -> dict:
    block = count_block(x_lo, x_hi, ScanConfig.from_repr(raw_config))
    return BlockSummary(x_lo, x_hi, block.max, block.saturated).to_repr()


def merge_reports(reports: List[ScanReport]) -> ScanReport:
    """
    Merge reports over disjoint blocks of one scan; the result does not depend on the order of `reports`.

    :raise ConfigurationError: on mismatched configs or overlapping blocks
    """
    if not reports:
        raise ConfigurationError("Nothing to merge")
    config = reports[0].config
    blocks = []  # type: List[BlockSummary]
    for report in reports:
        if not report.config.same_scan(config):
            raise ConfigurationError(f"Can not merge [{report.config!r}] into [{config!r}]")
        blocks.extend(report.blocks)
    blocks.sort(key=lambda block: block.x_lo)
    for left, right in zip(blocks, blocks[1:]):
        if right.x_lo <= left.x_hi:
            raise ConfigurationError(f"Blocks [{left.x_lo}, {left.x_hi}] and [{right.x_lo}, {right.x_hi}] overlap")
    return ScanReport(config, blocks, sum(report.runtime_ms for report in reports))


def write_checkpoint(report: ScanReport, file_path: str) -> None:
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    temporary = f"{file_path}.tmp"
    with open(temporary, "w") as f:
        json.dump(report.to_repr(), f, sort_keys=True, indent=2)
    os.replace(temporary, file_path)


def read_checkpoint(file_path: str, config: ScanConfig) -> ScanReport:
    """
    :raise CheckpointError: if the file can not be parsed or belongs to another scan
    """
    try:
        with open(file_path) as f:
            report = ScanReport.from_repr(json.load(f))
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise CheckpointError(file_path, str(e)) from e
    if not report.config.same_scan(config) or report.config.block_size != config.block_size:
        raise CheckpointError(file_path, f"it belongs to [{report.config!r}], not to [{config!r}]")
    planned = set(plan_blocks(config))
    if any((block.x_lo, block.x_hi) not in planned for block in report.blocks):
        raise CheckpointError(file_path, "it lists blocks that are not part of the scan plan")
    return report


def scan_range(config: ScanConfig, checkpoint_path: Optional[str] = None) -> ScanReport:
    """
    Count every block of the range, in worker processes when config.threads > 1. With a checkpoint file the blocks
    already listed there are skipped and the file is rewritten after each completed block.

    :param config: the scan parameters
    :param checkpoint_path: optional JSON checkpoint
    :return: the merged report
    """
    started = time.perf_counter()
    done = {}  # type: Dict[int, BlockSummary]
    if checkpoint_path is not None and os.path.exists(checkpoint_path):
        for block in read_checkpoint(checkpoint_path, config).blocks:
            done[block.x_lo] = block
        logger.info(f"Resuming [{config!r}] with [{len(done)}] blocks from [{checkpoint_path}]")
    todo = [(x_lo, x_hi) for x_lo, x_hi in plan_blocks(config) if x_lo not in done]

    def record(summary: BlockSummary) -> None:
        done[summary.x_lo] = summary
        if summary.saturated:
            logger.warning(f"Counters saturated in block [{summary.x_lo}, {summary.x_hi}]")
        logger.debug(f"Block [{summary.x_lo}, {summary.x_hi}] done, max [{summary.bound}]")
        if checkpoint_path is not None:
            write_checkpoint(ScanReport(config, list(done.values())), checkpoint_path)

    raw_config = config.to_repr()
    if config.threads == 1 or len(todo) <= 1:
        for x_lo, x_hi in todo:
            record(BlockSummary.from_repr(_scan_block(x_lo, x_hi, raw_config)))
    else:
        with ProcessPoolExecutor(max_workers=config.threads) as executor:
            futures = [executor.submit(_scan_block, x_lo, x_hi, raw_config) for x_lo, x_hi in todo]
            for future in as_completed(futures):
                record(BlockSummary.from_repr(future.result()))
    report = ScanReport(config, list(done.values()), int((time.perf_counter() - started) * 1000))
    logger.info(f"Scan [{config!r}] finished in [{report.runtime_ms}] ms, bound [{report.global_bound}] over "
                f"[{report.blocks_processed}] blocks")
    return report


def dump_counters(config: ScanConfig, x_lo: int, x_hi: int, file_path: str) -> int:
    """
    Write the counters of [x_lo, x_hi] as `X,counter` rows.

    :return: the number of rows written
    """
    block = count_block(x_lo, x_hi, config)
    with open(file_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["X", "counter"])
        for offset, counter in enumerate(block.counters.tolist()):
            writer.writerow([x_lo + offset, counter])
    return x_hi - x_lo + 1


def certify_scan(report: ScanReport, stage: str, cap: int) -> Certificate:
    """
    The scan certificate: the largest counter stays at most `cap` over a complete, unsaturated scan. Its total is
    the global bound, so it also hands the cap to the low range certificate.
    """
    config = report.config
    terms = [(f"max C_eps over [{block.x_lo}, {block.x_hi}]", Enclosure.point(block.bound)) for block in report.blocks]
    checks = [
        CertificateCheck(f"blocks cover [{config.x_min}, {config.x_max}]", Enclosure.point(int(report.complete)),
                         ">=", 1),
        CertificateCheck("saturated blocks", Enclosure.point(sum(block.saturated for block in report.blocks)), "<", 1),
    ]
    inputs = {
        "X min": config.x_min,
        "X max": config.x_max,
        "eps": config.eps,
        "a lower factor": config.a_lower_factor,
        "b lower factor": config.b_lower_factor,
    }
    certificate = Certificate(stage, inputs, terms, Enclosure.point(report.global_bound), cap + 1, [], checks,
                              report.runtime_ms)
    logger.info(f"Scan certificate [{stage}] bound [{report.global_bound}] against cap [{cap}], "
                f"verified [{certificate.verified}]")
    return certificate
