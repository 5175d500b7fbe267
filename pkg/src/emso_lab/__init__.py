"""Laboratory for clique/independent-set MSO sentences on random graphs."""
