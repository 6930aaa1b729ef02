import json
import logging
from typing import Any, Dict, Optional

REPORT_LOG: str = 'reports.jsonl'


def setup_logging(log_file: Optional[str] = 'frobrig.log', level: int = logging.INFO) -> None:
    """Setup logging configuration.

    Args:
        log_file: Path to log file; None logs to stderr.
        level: Logging level.
    """
    logging.basicConfig(
        filename=log_file,
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    logging.info("Logging setup complete.")


def log_report(report: Dict[str, Any], path: str = REPORT_LOG) -> None:
    """Append an emitted report to the JSON-lines run log."""
    try:
        with open(path, 'a') as f:
            json.dump(report, f, sort_keys=True)
            f.write('\n')
    except IOError as e:
        logging.error(f"Failed to log report: {e}")
