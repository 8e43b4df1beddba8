from trimap.roots.sqrt import NegativeRadicandError, SqrtStrategy, sqrt_eval


__all__ = ["NegativeRadicandError", "SqrtStrategy", "sqrt_eval"]
