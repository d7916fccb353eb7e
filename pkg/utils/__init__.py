# Shared API response envelope and DRF exception handler
