from typing import TYPE_CHECKING, Any, Callable

if TYPE_CHECKING:
    from hamilton.driver import Builder
    from hamilton.driver import Driver
    from hamilton.graph_types import HamiltonNode
else:
    Builder = object
    Driver = object
    HamiltonNode = object


class Pipeline:
    """
    Predefined execution of an experiment dataflow.

    Wraps a Hamilton `Builder` together with the final variables to compute, so that the same
    experiment graph can be executed repeatedly for different configurations.

    Args:
        builder (hamilton.driver.Builder):
            Hamilton builder holding the dataflow modules and the DAG configuration (policy
            variant). The driver is built lazily at execution time.
        final_vars (list[str | Callable | hamilton.graph_types.HamiltonNode]):
            Final variables that the driver will compute.
        description (str, optional):
            Human readable summary of what the pipeline produces.

    Example:
        >>> from hamilton.driver import Builder
        >>> from offload_bandit.dataflows import scenario, simulation
        >>>
        >>> builder = Builder().with_modules(scenario, simulation).with_config(
        ...     {"policy_name": "ucb1"}
        ... )
        >>> pipeline = Pipeline(builder, ["run_summary"])
        >>> result = pipeline.execute(inputs={"experiment": config})
    """

    def __init__(
        self,
        builder: Builder,
        final_vars: list[str | Callable | HamiltonNode],
        *,
        description: str | None = None,
    ) -> None:
        from hamilton.driver import Builder

        if not builder or not isinstance(builder, Builder):
            name = type(builder).__name__
            raise TypeError(f"Expected 'builder' to be a Hamilton Builder instance, got {name}.")
        self._builder = builder
        if not isinstance(final_vars, list):
            raise TypeError(f"Expected 'final_vars' to be a list instance, got {final_vars}.")
        self._final_vars = final_vars
        self.description = description

    @property
    def final_vars(self) -> list[str | Callable | HamiltonNode]:
        """Returns the final variables computed by the pipeline."""
        return list(self._final_vars)

    def _process_inputs(
        self, driver: Driver, inputs: dict[str, Any] | None
    ) -> dict[str, Any] | None:
        """Drops inputs that were already passed to the driver configuration."""
        if not inputs:
            return None
        return {key: value for key, value in inputs.items() if key not in driver.config}

    def execute(self, inputs: dict[str, Any] | None = None) -> dict[str, Any]:
        """
        Executes the experiment dataflow.

        Args:
            inputs (dict[str, Any], optional):
                Inputs for the dataflow, typically `{"experiment": ExperimentConfig}`.

        Returns:
            The computed final variables keyed by name.

        Raises:
            ValueError: If a required input of the dataflow is missing.
        """
        driver = self._builder.build()
        inputs = self._process_inputs(driver, inputs)
        return driver.execute(
            final_vars=self._final_vars,
            inputs=inputs,  # pyright: ignore[reportArgumentType]
        )
