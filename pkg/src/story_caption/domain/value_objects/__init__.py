"""Domain value objects."""

from .captions import CaptionDoc, Mention, MentionChain, Slot
from .dataset_profile import DatasetProfile
from .descriptors import DescriptorFrame, DescriptorSequence
from .encoding_models import FisherVector, GmmModel, LinearOvrModel, PcaModel
from .evaluation import CaptionScores, EvaluationReport
from .grammar import BinaryRule, ConnectiveInstance, LexicalRule, ParseTree, Pcfg
from .lexicons import EmbeddingTable, Gender, GenderLexicon, LemmaTable, TaggerLexicon
from .tokens import TaggedToken
from .windows import ActionWindow, Segment, SegmentationResult, SlidingWindowConfig, SweepPoint, SweepReport

__all__ = [
    "ActionWindow",
    "BinaryRule",
    "CaptionDoc",
    "CaptionScores",
    "ConnectiveInstance",
    "DatasetProfile",
    "DescriptorFrame",
    "DescriptorSequence",
    "EmbeddingTable",
    "EvaluationReport",
    "FisherVector",
    "Gender",
    "GenderLexicon",
    "GmmModel",
    "LemmaTable",
    "LexicalRule",
    "LinearOvrModel",
    "Mention",
    "MentionChain",
    "ParseTree",
    "PcaModel",
    "Pcfg",
    "Segment",
    "SegmentationResult",
    "SlidingWindowConfig",
    "Slot",
    "SweepPoint",
    "SweepReport",
    "TaggedToken",
    "TaggerLexicon",
]
