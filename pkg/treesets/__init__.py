from treesets.config import Limits, default_limits, lemma_assertions_enabled, load_limits, set_limits

__all__ = ["Limits", "default_limits", "lemma_assertions_enabled", "load_limits", "set_limits"]
