# Services tests
