from .fuzzy_topsis import (FuzzyRating, fuzzy_product, rank_fuzzy_topsis, rating_from_scores,
                           vertex_distance)
from .matrix import (DecisionMatrix, ScoredRanking, rank_scores, read_decision_matrix,
                     write_decision_matrix)
from .methods import (METHODS, criterion_rankings, get_method, rank_all, rank_borda,
                      rank_borda_matrix, rank_codas, rank_copras, rank_electre1, rank_marcos,
                      rank_promethee2, rank_saw, rank_topsis, rank_vikor, rank_wsm)

__all__ = [
    "DecisionMatrix", "ScoredRanking", "FuzzyRating", "METHODS",
    "rank_topsis", "rank_copras", "rank_borda", "rank_borda_matrix", "rank_saw", "rank_wsm",
    "rank_electre1", "rank_vikor", "rank_marcos", "rank_promethee2", "rank_codas",
    "rank_fuzzy_topsis", "rank_all", "get_method", "criterion_rankings", "rank_scores",
    "fuzzy_product", "vertex_distance", "rating_from_scores",
    "read_decision_matrix", "write_decision_matrix",
]
