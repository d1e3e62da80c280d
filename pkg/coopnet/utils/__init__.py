# Shared helpers: logging setup and seeded random streams
