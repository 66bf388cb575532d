# Numeric services: geometry, settling, annotation, baselines, planner, viewsynth, evaluation
