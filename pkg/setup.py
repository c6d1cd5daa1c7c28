import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

version = "0.1.0"

setuptools.setup(
    name="BSSit",
    version=version,
    author="BSSit Contributors",
    description="BSSit is a package for probabilistic blind source separation of data matrices "
                "with per-source priors and optional random projections",
    long_description=long_description,
    long_description_content_type="text/markdown",
    install_requires=["numpy>=2.0", "scipy>=1.11"],
    extras_require={"test": ["cvxpy>=1.1.17"]},
    entry_points={"console_scripts": ["bssit=BSSit.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    packages=[element for element in setuptools.find_packages() if element[:5] == 'BSSit'],
    python_requires=">=3.9",
)
