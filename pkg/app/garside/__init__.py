"""Garside structures, greedy normal forms and their automata."""
