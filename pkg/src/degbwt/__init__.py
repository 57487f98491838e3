"""Exact pattern matching in degenerate strings via backward search on the BWT."""

from .baselines import UnsupportedLength, bndm_degenerate, naive_match
from .bwt_index import (BwtIndex, bwt_build, build_suffix_array, deserialize, inverse_bwt, load,
                        save, serialize)
from .core import (DNA, SENTINEL, Alphabet, InvalidInput, decode_iupac, degenerate_count,
                   encode_iupac, format_string, intersects, is_degenerate_prefix, is_solid, parse,
                   symbol_order)
from .fasta import read_fasta, write_fasta
from .generate import GenSpec, gen, random_pattern
from .search import (IntervalSet, count_occurrences, degenerate_backward_search, find_occurrences,
                     merge, one_step)

__version__ = "0.1.0"
