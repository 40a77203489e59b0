package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class CatchAndDoNothingNeg {
  void run(Channel ch) {
    try {
      ch.read();
    } catch (IOException e) {
      handle(e);
    }
  }

  private void handle(Throwable t) {}
}
