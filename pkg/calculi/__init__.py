# Calculi package
