"""
Memo table for minimal free resolutions.

Resolutions are the most expensive objects the engine builds, and the
same module is resolved again and again by depth, pd and Tor queries.
Entries are keyed by the md5 signature of the canonical presentation text
plus the number of steps and are never overwritten: recomputing an entry
yields the same resolution, so the first stored value wins.

Features:
- Thread-safe operations
- LRU eviction with an entry limit
- Optional pickle persistence
- Cache statistics
"""

import hashlib
import logging
import pickle
import threading
import time
from collections import OrderedDict
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from . import config

logger = logging.getLogger(__name__)

# A polynomial as plain data: ((exponents, coefficient), ...)
TermData = Tuple[Tuple[Tuple[int, ...], int], ...]


@dataclass
class CachedResolution:
    """A resolution stored as plain data so it can be pickled."""
    twists: List[Tuple[int, ...]]
    differentials: List[List[List[TermData]]]
    betti: Dict[Tuple[int, int], int]
    complete: bool
    steps: int


@dataclass
class CacheEntry:
    signature: str
    resolution: CachedResolution
    timestamp: float
    access_count: int = 0
    last_accessed: float = 0.0


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    evictions: int = 0
    rejected_overwrites: int = 0
    errors: int = 0
    total_entries: int = 0


class ResolutionCache:
    """
    Thread-safe single-assignment cache of resolutions.

    Features:
    - MD5 keys of canonical presentation text and step count
    - LRU eviction past max_entries
    - Optional persistence to a pickle file
    """

    def __init__(
        self,
        cache_file: str = config.CACHE_FILE,
        max_entries: int = config.CACHE_MAX_ENTRIES,
        enable_persistence: bool = config.CACHE_PERSISTENCE
    ):
        """
        Initialize the resolution cache.

        Args:
            cache_file: Pickle file used when persistence is enabled
            max_entries: Entry limit before LRU eviction
            enable_persistence: Whether to load and save the cache file
        """
        self.cache_file = Path(cache_file)
        self.max_entries = max_entries
        self.enable_persistence = enable_persistence

        self._lock = threading.RLock()
        self._cache: 'OrderedDict[str, CacheEntry]' = OrderedDict()
        self._stats = CacheStats()

        self._load_cache()
        logger.info(f"ResolutionCache initialized: max_entries={max_entries}, "
                    f"persistence={enable_persistence}")

    @staticmethod
    def make_key(presentation_text: str, steps: int) -> str:
        return hashlib.md5(f"{presentation_text}\nsteps {steps}".encode('utf-8')).hexdigest()

    def _load_cache(self) -> None:
        if not self.enable_persistence or not self.cache_file.exists():
            return
        try:
            with open(self.cache_file, 'rb') as f:
                data = pickle.load(f)
            if isinstance(data, dict) and 'cache' in data and 'stats' in data:
                self._cache = OrderedDict(data['cache'])
                self._stats = CacheStats(**data['stats'])
                logger.info(f"Loaded resolution cache: {len(self._cache)} entries")
            else:
                logger.warning("Invalid resolution cache file format, starting fresh")
        except (OSError, pickle.UnpicklingError, EOFError, TypeError, AttributeError) as e:
            logger.error(f"Failed to load resolution cache: {e}")
            backup_file = self.cache_file.with_suffix('.bak')
            try:
                self.cache_file.rename(backup_file)
                logger.info(f"Backed up corrupted cache to {backup_file}")
            except OSError:
                pass

    def _save_cache(self) -> None:
        if not self.enable_persistence:
            return
        try:
            data = {
                'cache': dict(self._cache),
                'stats': asdict(self._stats),
                'version': '1.0',
                'timestamp': time.time()
            }
            temp_file = self.cache_file.with_suffix('.tmp')
            with open(temp_file, 'wb') as f:
                pickle.dump(data, f)
            temp_file.replace(self.cache_file)
        except (OSError, pickle.PicklingError) as e:
            self._stats.errors += 1
            logger.error(f"Failed to save resolution cache: {e}")

    def _evict(self) -> None:
        while len(self._cache) > self.max_entries:
            key, _ = self._cache.popitem(last=False)
            self._stats.evictions += 1
            logger.debug(f"Evicted resolution {key}")
        self._stats.total_entries = len(self._cache)

    def get(self, key: str) -> Optional[CachedResolution]:
        with self._lock:
            entry = self._cache.get(key)
            if entry is None:
                self._stats.misses += 1
                return None
            entry.access_count += 1
            entry.last_accessed = time.time()
            self._cache.move_to_end(key)
            self._stats.hits += 1
            logger.debug(f"Resolution cache hit for {key}")
            return entry.resolution

    def put(self, key: str, resolution: CachedResolution) -> bool:
        """Store a resolution; returns False when the key is already taken."""
        with self._lock:
            if key in self._cache:
                self._stats.rejected_overwrites += 1
                return False
            now = time.time()
            self._cache[key] = CacheEntry(key, resolution, now, 1, now)
            self._evict()
            self._save_cache()
            return True

    def __contains__(self, key: str) -> bool:
        with self._lock:
            return key in self._cache

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)

    def clear_cache(self) -> int:
        with self._lock:
            count = len(self._cache)
            self._cache.clear()
            self._stats = CacheStats()
            if self.cache_file.exists():
                try:
                    self.cache_file.unlink()
                except OSError as e:
                    logger.error(f"Error removing cache file: {e}")
            logger.info(f"Cleared resolution cache: {count} entries removed")
            return count

    def get_stats(self) -> Dict[str, Any]:
        with self._lock:
            stats = asdict(self._stats)
            lookups = self._stats.hits + self._stats.misses
            stats.update({
                'hit_rate': self._stats.hits / lookups if lookups else 0,
                'total_entries': len(self._cache),
                'max_entries': self.max_entries,
            })
            return stats


_global_cache: Optional[ResolutionCache] = None
_cache_lock = threading.Lock()


def get_resolution_cache() -> ResolutionCache:
    """Get or create the global resolution cache."""
    global _global_cache

    if _global_cache is None:
        with _cache_lock:
            if _global_cache is None:
                _global_cache = ResolutionCache()

    return _global_cache


def clear_resolution_cache() -> int:
    if _global_cache is not None:
        return _global_cache.clear_cache()
    return 0
